// model.hpp - levels, form factors, coupling and initial states of the N-level Friedrichs model
//
// Units: energies and rates in s^-1, times in s, hbar = 1.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace friedrichs {

using cplx = std::complex<double>;

// Coupling between one discrete level and the continuum [0, inf).
//
// The declared exponents fix the two-sided behaviour
//   v(w) ~ q w^p      (w -> 0+)
//   v(w) ~ s w^(-r)   (w -> inf)
// PowerLawCutoff realises it as v(w) = q w^p / (1 + w/cutoff)^(p+r), so s = q cutoff^(p+r).
// Tabulated interpolates (w, v) samples with a natural cubic spline and continues them by the
// declared power laws outside the sampled range.
class FormFactor {
public:
    enum class Family { PowerLawCutoff, Tabulated };

    struct Sample {
        double omega;
        cplx value;
    };

    static FormFactor power_law_cutoff(cplx q, double p, double r, double cutoff);
    static FormFactor tabulated(cplx q, double p, double r, std::vector<Sample> samples);

    Family family() const noexcept { return family_; }
    cplx q() const noexcept { return q_; }
    double p() const noexcept { return p_; }
    double r() const noexcept { return r_; }
    double cutoff() const noexcept { return cutoff_; }
    const std::vector<Sample>& samples() const noexcept { return samples_; }

    // v(w) for w >= 0; v(0) = 0.
    cplx operator()(double omega) const;

    // v(x) - v(y) without the cancellation of the naive difference when x ~ y.
    cplx difference(double x, double y) const;
    // Same, with v(y) already known.
    cplx difference(double x, double y, cplx vy) const;

    // Amplitude s of the large-energy law v ~ s w^(-r).
    cplx large_energy_amplitude() const;

    // Energies where v is not analytic (spline knots); empty for PowerLawCutoff.
    std::vector<double> knots() const;

    // Energy scale of the form factor: the cutoff, or the last sample.
    double scale() const;

private:
    FormFactor() = default;

    struct Piece {
        double x0;
        cplx a, b, c, d;  // a + b s + c s^2 + d s^3 with s = w - x0
    };

    std::size_t piece_index(double omega) const;
    cplx piece_delta(std::size_t k, double x, double y) const;
    cplx segment_difference(double x, double y) const;

    Family family_{Family::PowerLawCutoff};
    cplx q_{0.0, 0.0};
    double p_{0.0};
    double r_{0.0};
    double cutoff_{0.0};
    std::vector<Sample> samples_;
    std::vector<Piece> pieces_;
};

struct LevelSpec {
    double omega{0.0};
    FormFactor form_factor = FormFactor::power_law_cutoff(0.0, 0.5, 1.5, 1.0);
};

struct ModelSpec {
    std::vector<LevelSpec> levels;
    double lambda{0.0};

    std::size_t size() const noexcept { return levels.size(); }
    Eigen::VectorXd omegas() const;
    // v_n(w) for every level.
    Eigen::VectorXcd form_factors(double omega) const;
};

struct ValidationReport {
    struct Violation {
        int level;  // -1 for model-wide assumptions
        std::string message;
    };
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate_model(const ModelSpec& spec);

// Throws Error(Validation) with the report summary if the model is invalid.
void require_valid(const ModelSpec& spec);

// Complex amplitudes c_n over the discrete levels, normalised to one.
class InitialState {
public:
    static constexpr double kNormTolerance = 1e-12;

    // Throws Error(Validation) unless |sum |c_n|^2 - 1| <= kNormTolerance.
    explicit InitialState(Eigen::VectorXcd c);

    const Eigen::VectorXcd& coefficients() const noexcept { return c_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(c_.size()); }
    cplx operator[](std::size_t n) const { return c_(static_cast<Eigen::Index>(n)); }

private:
    Eigen::VectorXcd c_;
};

InitialState normalize_state(const Eigen::VectorXcd& raw);

// Canonical basis state localised on level n (0-based).
InitialState localized_state(std::size_t size, std::size_t n);

struct LeadingBehavior {
    double p{0.0};              // min over levels of p_n
    Eigen::VectorXcd q_tilde;   // q_n where p_n == p, else 0
};

inline constexpr double kExponentTolerance = 1e-12;

LeadingBehavior leading_small_energy(const ModelSpec& spec);

}  // namespace friedrichs
