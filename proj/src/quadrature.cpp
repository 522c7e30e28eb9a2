#include "friedrichs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

namespace friedrichs::quad {

namespace {

Rule build_gauss_legendre(std::size_t n) {
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) { p1 = x; p0 = 1.0; }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (std::size_t k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
            p0 = p1;
            p1 = pk;
        }
        if (n == 1) p0 = 1.0;
        dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

// Kronrod 15 / Gauss 7 abscissae and weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    Eigen::ArrayXcd value;
    Eigen::ArrayXd error;
};

void gauss_kronrod(const VectorIntegrand& f, Segment& seg) {
    const double c = 0.5 * (seg.a + seg.b);
    const double h = 0.5 * (seg.b - seg.a);
    const Eigen::ArrayXcd fc = f(c);
    Eigen::ArrayXcd kron = fc * kWgk[7];
    Eigen::ArrayXcd gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const Eigen::ArrayXcd sum = f(c - dx) + f(c + dx);
        kron += sum * kWgk[j];
        if (j % 2 == 1) gauss += sum * kWg[j / 2];
    }
    seg.value = kron * h;
    seg.error = ((kron - gauss) * h).abs();
}

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::unique_ptr<Rule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<Rule>(build_gauss_legendre(n));
    return *slot;
}

void legendre_values(double x, std::size_t kmax, double* out) {
    if (kmax == 0) return;
    out[0] = 1.0;
    if (kmax == 1) return;
    out[1] = x;
    for (std::size_t k = 2; k < kmax; ++k)
        out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / static_cast<double>(k);
}

void spherical_bessel_j(double x, std::size_t kmax, double* out) {
    if (kmax == 0) return;
    if (x == 0.0) {
        out[0] = 1.0;
        for (std::size_t k = 1; k < kmax; ++k) out[k] = 0.0;
        return;
    }
    if (x < 1.0) {
        // Power series j_k(x) = x^k/(2k+1)!! sum_m (-x^2/2)^m / (m! (2k+3)(2k+5)...(2k+2m+1))
        double lead = 1.0;  // x^k/(2k+1)!!
        for (std::size_t k = 0; k < kmax; ++k) {
            if (k > 0) lead *= x / (2.0 * k + 1.0);
            double term = 1.0, sum = 1.0;
            for (int m = 1; m < 30; ++m) {
                term *= -0.5 * x * x / (m * (2.0 * k + 2.0 * m + 1.0));
                sum += term;
                if (std::abs(term) < 1e-17 * std::abs(sum)) break;
            }
            out[k] = lead * sum;
        }
        return;
    }
    const double j0 = std::sin(x) / x;
    const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
    if (x >= static_cast<double>(kmax)) {
        out[0] = j0;
        if (kmax > 1) out[1] = j1;
        for (std::size_t k = 1; k + 1 < kmax; ++k)
            out[k + 1] = (2.0 * k + 1.0) / x * out[k] - out[k - 1];
        return;
    }
    // Miller's backward recurrence, normalised against the larger of j0, j1.
    const std::size_t start = kmax + 20 + static_cast<std::size_t>(x);
    std::vector<double> buf(start + 2, 0.0);
    buf[start + 1] = 0.0;
    buf[start] = 1e-300;
    for (std::size_t k = start; k >= 1; --k) {
        buf[k - 1] = (2.0 * k + 1.0) / x * buf[k] - buf[k + 1];
        if (std::abs(buf[k - 1]) > 1e250) {
            for (std::size_t m = k - 1; m <= start + 1; ++m) buf[m] *= 1e-250;
        }
    }
    const double scale = std::abs(j0) >= std::abs(j1) ? j0 / buf[0] : j1 / buf[1];
    for (std::size_t k = 0; k < kmax; ++k) out[k] = buf[k] * scale;
}

AdaptiveResult integrate_adaptive(const VectorIntegrand& f, const std::vector<double>& breaks,
                                  const AdaptiveOptions& options) {
    AdaptiveResult result;
    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        Segment s{breaks[i], breaks[i + 1], {}, {}};
        gauss_kronrod(f, s);
        result.evaluations += 15;
        segs.push_back(std::move(s));
    }
    if (segs.empty()) {
        result.value = f(breaks.empty() ? 0.0 : breaks.front()) * 0.0;
        result.error = result.value.abs();
        result.converged = true;
        return result;
    }
    const Eigen::Index dim = segs.front().value.size();
    auto totals = [&](Eigen::ArrayXcd& v, Eigen::ArrayXd& e) {
        v = Eigen::ArrayXcd::Zero(dim);
        e = Eigen::ArrayXd::Zero(dim);
        for (const auto& s : segs) {
            v += s.value;
            e += s.error;
        }
    };
    Eigen::ArrayXcd value;
    Eigen::ArrayXd error;
    totals(value, error);
    for (;;) {
        Eigen::ArrayXd tol = options.rel_tol * value.abs();
        if (options.abs_floor) tol = tol.max(options.abs_floor(value));
        tol = tol.max(1e-300);
        if ((error <= tol).all()) {
            result.converged = true;
            break;
        }
        if (result.evaluations + 30 > options.max_evaluations) break;
        std::size_t worst = segs.size();
        double worst_score = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const double width = segs[i].b - segs[i].a;
            if (width <= 1e-14 * std::max(std::abs(segs[i].a), std::abs(segs[i].b))) continue;
            const double score = (segs[i].error / tol).maxCoeff();
            if (score > worst_score) {
                worst_score = score;
                worst = i;
            }
        }
        if (worst == segs.size()) break;
        const double mid = 0.5 * (segs[worst].a + segs[worst].b);
        Segment left{segs[worst].a, mid, {}, {}};
        Segment right{mid, segs[worst].b, {}, {}};
        gauss_kronrod(f, left);
        gauss_kronrod(f, right);
        result.evaluations += 30;
        value += left.value + right.value - segs[worst].value;
        error += left.error + right.error - segs[worst].error;
        segs[worst] = std::move(left);
        segs.push_back(std::move(right));
    }
    totals(value, error);
    result.value = value;
    result.error = error;
    return result;
}

}  // namespace friedrichs::quad
