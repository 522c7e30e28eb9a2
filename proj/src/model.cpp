#include "friedrichs/model.hpp"

#include "friedrichs/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace friedrichs {

namespace {

// Natural cubic spline second derivatives for complex ordinates.
std::vector<cplx> spline_second_derivatives(const std::vector<FormFactor::Sample>& s) {
    const std::size_t n = s.size();
    std::vector<cplx> m(n, cplx{0.0, 0.0});
    if (n < 3) return m;
    // Thomas algorithm on the interior equations.
    std::vector<double> diag(n, 0.0), upper(n, 0.0);
    std::vector<cplx> rhs(n, cplx{0.0, 0.0});
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = s[i].omega - s[i - 1].omega;
        const double h1 = s[i + 1].omega - s[i].omega;
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((s[i + 1].value - s[i].value) / h1 - (s[i].value - s[i - 1].value) / h0);
    }
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double lower = s[i].omega - s[i - 1].omega;
        const double w = lower / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        if (i == 1) break;
    }
    return m;
}

}  // namespace

FormFactor FormFactor::power_law_cutoff(cplx q, double p, double r, double cutoff) {
    FormFactor f;
    f.family_ = Family::PowerLawCutoff;
    f.q_ = q;
    f.p_ = p;
    f.r_ = r;
    f.cutoff_ = cutoff;
    return f;
}

FormFactor FormFactor::tabulated(cplx q, double p, double r, std::vector<Sample> samples) {
    FormFactor f;
    f.family_ = Family::Tabulated;
    f.q_ = q;
    f.p_ = p;
    f.r_ = r;
    f.samples_ = std::move(samples);
    const auto& s = f.samples_;
    if (s.size() >= 2) {
        const auto m = spline_second_derivatives(s);
        for (std::size_t k = 0; k + 1 < s.size(); ++k) {
            const double h = s[k + 1].omega - s[k].omega;
            Piece piece;
            piece.x0 = s[k].omega;
            piece.a = s[k].value;
            piece.b = (s[k + 1].value - s[k].value) / h - h * (2.0 * m[k] + m[k + 1]) / 6.0;
            piece.c = m[k] / 2.0;
            piece.d = (m[k + 1] - m[k]) / (6.0 * h);
            f.pieces_.push_back(piece);
        }
    }
    return f;
}

// Region index: 0 below the samples, 1..pieces for spline pieces, pieces+1 above.
std::size_t FormFactor::piece_index(double omega) const {
    if (omega < samples_.front().omega) return 0;
    if (omega >= samples_.back().omega) return pieces_.size() + 1;
    auto it = std::upper_bound(samples_.begin(), samples_.end(), omega,
                               [](double w, const Sample& s) { return w < s.omega; });
    return static_cast<std::size_t>(it - samples_.begin());
}

cplx FormFactor::operator()(double omega) const {
    if (!(omega > 0.0)) return {0.0, 0.0};
    if (family_ == Family::PowerLawCutoff) {
        if (q_ == cplx{0.0, 0.0}) return {0.0, 0.0};
        return q_ * std::exp(p_ * std::log(omega) - (p_ + r_) * std::log1p(omega / cutoff_));
    }
    const std::size_t k = piece_index(omega);
    if (k == 0) {
        const auto& s0 = samples_.front();
        return s0.value * std::pow(omega / s0.omega, p_);
    }
    if (k == pieces_.size() + 1) {
        const auto& sl = samples_.back();
        return sl.value * std::pow(sl.omega / omega, r_);
    }
    const Piece& pc = pieces_[k - 1];
    const double s = omega - pc.x0;
    return pc.a + s * (pc.b + s * (pc.c + s * pc.d));
}

cplx FormFactor::piece_delta(std::size_t k, double x, double y) const {
    const double delta = x - y;
    if (k == 0) {
        const auto& s0 = samples_.front();
        if (!(y > 0.0)) return (*this)(x) - (*this)(y);
        return s0.value * std::pow(y / s0.omega, p_) * std::expm1(p_ * std::log1p(delta / y));
    }
    if (k == pieces_.size() + 1) {
        const auto& sl = samples_.back();
        return sl.value * std::pow(sl.omega / y, r_) * std::expm1(-r_ * std::log1p(delta / y));
    }
    const Piece& pc = pieces_[k - 1];
    const double sx = x - pc.x0;
    const double sy = y - pc.x0;
    return delta * (pc.b + pc.c * (sx + sy) + pc.d * (sx * sx + sx * sy + sy * sy));
}

cplx FormFactor::segment_difference(double x, double y) const {
    // Walk from y to x through the knots in between; each open segment lies in one region.
    const double lo = std::min(x, y);
    const double hi = std::max(x, y);
    std::vector<double> path{lo};
    for (const auto& s : samples_)
        if (s.omega > lo && s.omega < hi) path.push_back(s.omega);
    path.push_back(hi);
    cplx sum{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double mid = 0.5 * (path[i] + path[i + 1]);
        sum += piece_delta(piece_index(mid), path[i + 1], path[i]);
    }
    return x > y ? sum : -sum;
}

cplx FormFactor::difference(double x, double y) const {
    if (x == y) return {0.0, 0.0};
    if (!(x > 0.0) || !(y > 0.0)) return (*this)(x) - (*this)(y);
    if (family_ == Family::PowerLawCutoff) {
        if (q_ == cplx{0.0, 0.0}) return {0.0, 0.0};
        const double delta = x - y;
        const double log_ratio =
            p_ * std::log1p(delta / y) - (p_ + r_) * std::log1p(delta / (cutoff_ + y));
        return (*this)(y) * std::expm1(log_ratio);
    }
    return segment_difference(x, y);
}

cplx FormFactor::difference(double x, double y, cplx vy) const {
    if (family_ != Family::PowerLawCutoff || !(x > 0.0) || !(y > 0.0) || x == y)
        return difference(x, y);
    const double delta = x - y;
    return vy * std::expm1(p_ * std::log1p(delta / y) - (p_ + r_) * std::log1p(delta / (cutoff_ + y)));
}

cplx FormFactor::large_energy_amplitude() const {
    if (family_ == Family::PowerLawCutoff) return q_ * std::pow(cutoff_, p_ + r_);
    const auto& sl = samples_.back();
    return sl.value * std::pow(sl.omega, r_);
}

std::vector<double> FormFactor::knots() const {
    std::vector<double> out;
    out.reserve(samples_.size());
    for (const auto& s : samples_) out.push_back(s.omega);
    return out;
}

double FormFactor::scale() const {
    if (family_ == Family::PowerLawCutoff) return cutoff_;
    return samples_.empty() ? 1.0 : samples_.back().omega;
}

Eigen::VectorXd ModelSpec::omegas() const {
    Eigen::VectorXd w(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t n = 0; n < levels.size(); ++n) w(static_cast<Eigen::Index>(n)) = levels[n].omega;
    return w;
}

Eigen::VectorXcd ModelSpec::form_factors(double omega) const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(levels.size()));
    for (std::size_t n = 0; n < levels.size(); ++n)
        v(static_cast<Eigen::Index>(n)) = levels[n].form_factor(omega);
    return v;
}

std::string ValidationReport::summary() const {
    if (ok()) return "pass";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i) os << "; ";
        if (violations[i].level >= 0) os << "level " << violations[i].level << ": ";
        os << violations[i].message;
    }
    return os.str();
}

ValidationReport validate_model(const ModelSpec& spec) {
    ValidationReport report;
    auto fail = [&](int level, std::string msg) { report.violations.push_back({level, std::move(msg)}); };

    if (spec.levels.empty()) fail(-1, "model needs at least one level");
    if (!std::isfinite(spec.lambda)) fail(-1, "coupling lambda must be finite");
    else if (spec.lambda < 0.0) fail(-1, "coupling lambda must be non-negative");

    for (std::size_t n = 0; n < spec.levels.size(); ++n) {
        const int idx = static_cast<int>(n);
        const auto& level = spec.levels[n];
        const auto& ff = level.form_factor;
        if (!std::isfinite(level.omega) || !(level.omega > 0.0))
            fail(idx, "level energy must be positive and finite");
        if (!std::isfinite(ff.p()) || !(ff.p() > 0.0))
            fail(idx, "small-energy exponent must be positive");
        if (!std::isfinite(ff.r()) || !(ff.r() > 0.0))
            fail(idx, "large-energy exponent must be positive");
        if (!std::isfinite(ff.q().real()) || !std::isfinite(ff.q().imag()))
            fail(idx, "small-energy amplitude must be finite");
        if (ff.family() == FormFactor::Family::PowerLawCutoff) {
            if (!std::isfinite(ff.cutoff()) || !(ff.cutoff() > 0.0))
                fail(idx, "cutoff must be positive and finite");
        } else {
            const auto& s = ff.samples();
            if (s.size() < 2) fail(idx, "tabulated form factor needs at least two samples");
            for (std::size_t k = 0; k < s.size(); ++k) {
                if (!(s[k].omega > 0.0) || !std::isfinite(s[k].omega)) {
                    fail(idx, "tabulated energies must be positive");
                    break;
                }
                if (k > 0 && !(s[k].omega > s[k - 1].omega)) {
                    fail(idx, "tabulated energies must be strictly increasing");
                    break;
                }
            }
        }
        if (n > 0 && !(level.omega > spec.levels[n - 1].omega))
            fail(idx, "levels not strictly increasing");
    }
    return report;
}

void require_valid(const ModelSpec& spec) {
    const auto report = validate_model(spec);
    if (!report.ok()) throw Error(ErrorKind::Validation, report.summary());
}

InitialState::InitialState(Eigen::VectorXcd c) : c_(std::move(c)) {
    if (c_.size() == 0) throw Error(ErrorKind::Validation, "initial state is empty");
    const double norm_sq = c_.squaredNorm();
    if (!(std::abs(norm_sq - 1.0) <= kNormTolerance))
        throw Error(ErrorKind::Validation, "initial state is not normalised (sum |c|^2 = " +
                                               std::to_string(norm_sq) + ")");
}

InitialState normalize_state(const Eigen::VectorXcd& raw) {
    const double norm = raw.norm();
    if (raw.size() == 0 || !(norm > 0.0) || !std::isfinite(norm))
        throw Error(ErrorKind::ZeroVector, "cannot normalise a zero vector");
    return InitialState(raw / norm);
}

InitialState localized_state(std::size_t size, std::size_t n) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(size));
    c(static_cast<Eigen::Index>(n)) = 1.0;
    return InitialState(c);
}

LeadingBehavior leading_small_energy(const ModelSpec& spec) {
    require_valid(spec);
    LeadingBehavior out;
    out.p = spec.levels.front().form_factor.p();
    for (const auto& level : spec.levels) out.p = std::min(out.p, level.form_factor.p());
    const auto n = static_cast<Eigen::Index>(spec.size());
    out.q_tilde = Eigen::VectorXcd::Zero(n);
    bool any = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& ff = spec.levels[static_cast<std::size_t>(i)].form_factor;
        if (std::abs(ff.p() - out.p) < kExponentTolerance) {
            out.q_tilde(i) = ff.q();
            any = any || ff.q() != cplx{0.0, 0.0};
        }
    }
    if (!any)
        throw Error(ErrorKind::AllZeroAmplitudes,
                    "every level with the minimal exponent has zero amplitude");
    return out;
}

}  // namespace friedrichs
