// SPDX-License-Identifier: Apache-2.0

#include "ircw/robust_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ircw/error.hpp"
#include "ircw/random.hpp"

namespace ircw {

namespace {

constexpr double kSaddleSlack = 1e-9;
constexpr double kWorstAllocationSlack = 1e-12;
constexpr std::size_t kMaxBracketDoublings = 2048;

void validate_coefficients(const JointCoefficients& c) {
    if (!(c.alpha >= 0.0) || !(c.beta >= 0.0) || !std::isfinite(c.alpha) ||
        !std::isfinite(c.beta) || !(c.alpha + c.beta > 0.0)) {
        throw DomainError("joint coefficients must be nonnegative with a positive sum");
    }
}

double closed_form_entry(double mu_prime, double nu_inv, double varpi_inv,
                         const JointCoefficients& c) {
    // p is the larger root of p² + b p + q = 0. The discriminant is written
    // as a sum of squares; the root is taken in whichever form avoids
    // cancellation.
    const double b = (nu_inv + varpi_inv) - mu_prime * (c.alpha + c.beta);
    const double q = nu_inv * varpi_inv - mu_prime * (c.alpha * varpi_inv + c.beta * nu_inv);
    const double shift = (varpi_inv - nu_inv) + mu_prime * (c.alpha - c.beta);
    const double sqrt_disc = std::sqrt(shift * shift + 4.0 * mu_prime * mu_prime * c.alpha * c.beta);

    double root;
    if (b <= 0.0) {
        root = 0.5 * (-b + sqrt_disc);
    } else {
        const double denom = -b - sqrt_disc;
        root = denom < 0.0 ? 2.0 * q / denom : 0.0;
    }
    return root > 0.0 ? root : 0.0;
}

double closed_form_total(double mu_prime, const InverseCnrs& inv, const JointCoefficients& c) {
    double total = 0.0;
    for (std::size_t m = 0; m < inv.size(); ++m)
        total += closed_form_entry(mu_prime, inv.radar_inv[m], inv.comm_inv[m], c);
    return total;
}

}  // namespace

void InverseCnrs::validate() const {
    if (radar_inv.empty()) throw DimensionError("inverse CNRs are empty");
    detail::require_same_size(comm_inv.size(), radar_inv.size(), "comm_inv");
    for (std::size_t m = 0; m < radar_inv.size(); ++m) {
        if (!(radar_inv[m] > 0.0) || !std::isfinite(radar_inv[m]) || !(comm_inv[m] > 0.0) ||
            !std::isfinite(comm_inv[m])) {
            throw DomainError("inverse CNR at " + std::to_string(m) + " must be positive and finite");
        }
    }
}

InverseCnrs invert(const CnrProfile& cnr) {
    cnr.validate();
    InverseCnrs inv{std::vector<double>(cnr.size()), std::vector<double>(cnr.size())};
    for (std::size_t m = 0; m < cnr.size(); ++m) {
        inv.radar_inv[m] = 1.0 / cnr.radar_cnr[m];
        inv.comm_inv[m] = 1.0 / cnr.comm_cnr[m];
    }
    inv.validate();
    return inv;
}

std::vector<double> closed_form_power(double mu_prime, const InverseCnrs& inv,
                                      const JointCoefficients& coeffs) {
    inv.validate();
    validate_coefficients(coeffs);
    if (!(mu_prime > 0.0) || !std::isfinite(mu_prime))
        throw DomainError("closed_form_power: multiplier must be positive");
    std::vector<double> p(inv.size());
    for (std::size_t m = 0; m < inv.size(); ++m)
        p[m] = closed_form_entry(mu_prime, inv.radar_inv[m], inv.comm_inv[m], coeffs);
    return p;
}

double initial_multiplier_bound(const InverseCnrs& inv, const JointCoefficients& coeffs) {
    inv.validate();
    validate_coefficients(coeffs);
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < inv.size(); ++m) {
        smallest = std::min(smallest, coeffs.alpha / (inv.radar_inv[m] + 1.0) +
                                          coeffs.beta / (inv.comm_inv[m] + 1.0));
    }
    return 1.0 / smallest;
}

RobustSolution solve_robust(const CnrProfile& lower_cnr, const JointCoefficients& coeffs,
                            double budget) {
    const InverseCnrs inv = invert(lower_cnr);
    validate_coefficients(coeffs);
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw DomainError("solve_robust: budget must be positive");

    // Σp(μ') is continuous and nondecreasing, zero near μ' = 0. The initial
    // upper end reaches a unit total; double it for larger budgets.
    double lo = 0.0;
    double hi = initial_multiplier_bound(inv, coeffs);
    double hi_total = closed_form_total(hi, inv, coeffs);
    for (std::size_t k = 0; hi_total < budget; ++k) {
        if (k == kMaxBracketDoublings || !std::isfinite(hi))
            throw SolverError("solve_robust: could not bracket the multiplier");
        lo = hi;
        hi *= 2.0;
        hi_total = closed_form_total(hi, inv, coeffs);
    }
    double lo_total = lo > 0.0 ? closed_form_total(lo, inv, coeffs) : 0.0;

    // Bisect until the bracket collapses to adjacent doubles.
    std::size_t iterations = 0;
    while (iterations < kMaxBisectionIterations) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        ++iterations;
        const double total = closed_form_total(mid, inv, coeffs);
        if (total < budget) {
            lo = mid;
            lo_total = total;
        } else {
            hi = mid;
            hi_total = total;
        }
        if (total == budget) break;
    }

    const bool take_hi = std::abs(hi_total - budget) <= std::abs(lo_total - budget);
    const double mu_prime = take_hi ? hi : lo;
    const double total = take_hi ? hi_total : lo_total;
    if (!(std::abs(total - budget) <= kBisectionTolerance) || !(mu_prime > 0.0)) {
        throw SolverError("solve_robust: bisection did not reach the budget within " +
                          std::to_string(kBisectionTolerance));
    }

    RobustSolution solution;
    solution.allocation = {closed_form_power(mu_prime, inv, coeffs), budget};
    solution.multiplier = mu_prime;
    solution.iterations = iterations;
    solution.worst_case_value = joint_criterion(solution.allocation.powers, lower_cnr, coeffs);
    solution.kkt_residual = kkt_residual(solution, inv, coeffs, budget);
    return solution;
}

RobustSolution solve_robust(const OfdmParams& params, const NoiseModel& noise,
                            const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                            double budget) {
    cls.validate();
    const CnrProfile lower = cnr_from_response(params, noise, cls.lower());
    return solve_robust(lower, cfg.coefficients(), budget);
}

double kkt_residual(const RobustSolution& solution, const InverseCnrs& inv,
                    const JointCoefficients& coeffs, double budget) {
    inv.validate();
    validate_coefficients(coeffs);
    const auto& p = solution.allocation.powers;
    detail::require_same_size(p.size(), inv.size(), "robust solution");
    if (!(solution.multiplier > 0.0)) return std::numeric_limits<double>::infinity();

    const double mu = 1.0 / solution.multiplier;
    double residual = std::abs(std::accumulate(p.begin(), p.end(), 0.0) - budget);
    for (std::size_t m = 0; m < p.size(); ++m) {
        const double nu = 1.0 / inv.radar_inv[m];
        const double varpi = 1.0 / inv.comm_inv[m];
        const double gradient =
            coeffs.alpha * nu / (1.0 + p[m] * nu) + coeffs.beta * varpi / (1.0 + p[m] * varpi);
        if (p[m] < 0.0) {
            residual = std::max(residual, -p[m]);
        } else if (p[m] > 0.0) {
            residual = std::max(residual, std::abs(mu - gradient) / mu);
        } else {
            residual = std::max(residual, std::max(gradient - mu, 0.0) / mu);
        }
    }
    return residual;
}

SaddlePointReport check_saddle_point(const OfdmParams& params, const NoiseModel& noise,
                                     const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                                     const RobustSolution& solution,
                                     std::span<const ResponsePoint> responses,
                                     std::span<const PowerAllocation> allocations) {
    cls.validate();
    const JointCoefficients& coeffs = cfg.coefficients();
    const CnrProfile lower = cnr_from_response(params, noise, cls.lower());
    const auto& ps = solution.allocation.powers;
    const double at_saddle = joint_criterion(ps, lower, coeffs);

    SaddlePointReport report;
    report.slack = kSaddleSlack;
    report.response_samples = responses.size();
    report.allocation_samples = allocations.size();
    report.response_margin = std::numeric_limits<double>::infinity();
    report.allocation_margin = std::numeric_limits<double>::infinity();

    for (const ResponsePoint& rho : responses) {
        if (!cls.contains(rho)) throw PreconditionError("sampled response lies outside the class");
        const double value = joint_criterion(ps, cnr_from_response(params, noise, rho), coeffs);
        const double margin = value - at_saddle;
        report.response_margin = std::min(report.response_margin, margin);
        if (margin < -kSaddleSlack) ++report.response_violations;
    }
    for (const PowerAllocation& p : allocations) {
        const double margin = at_saddle - joint_criterion(p.powers, lower, coeffs);
        report.allocation_margin = std::min(report.allocation_margin, margin);
        if (margin < -kSaddleSlack) ++report.allocation_violations;
    }
    if (responses.empty()) report.response_margin = 0.0;
    if (allocations.empty()) report.allocation_margin = 0.0;
    return report;
}

std::vector<ResponsePoint> sample_responses(const UncertaintyClass& cls, std::size_t n,
                                            std::uint64_t seed) {
    cls.validate();
    Rng rng(seed, 0);
    std::vector<ResponsePoint> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        ResponsePoint rho{std::vector<double>(cls.size()), std::vector<double>(cls.size())};
        for (std::size_t m = 0; m < cls.size(); ++m) {
            const double ur = rng.uniform();
            const double uc = rng.uniform();
            rho.radar_response[m] =
                std::clamp(cls.radar_lower[m] + ur * (cls.radar_upper[m] - cls.radar_lower[m]),
                           cls.radar_lower[m], cls.radar_upper[m]);
            rho.comm_response[m] =
                std::clamp(cls.comm_lower[m] + uc * (cls.comm_upper[m] - cls.comm_lower[m]),
                           cls.comm_lower[m], cls.comm_upper[m]);
        }
        out.push_back(std::move(rho));
    }
    return out;
}

std::vector<PowerAllocation> sample_allocations(std::size_t n_subcarriers, double budget,
                                                std::size_t n, std::uint64_t seed) {
    if (n_subcarriers == 0) throw DimensionError("sample_allocations: zero subcarriers");
    Rng rng(seed, 1);
    std::vector<PowerAllocation> out;
    out.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        PowerAllocation p{std::vector<double>(n_subcarriers), budget};
        double sum = 0.0;
        for (double& x : p.powers) {
            x = rng.exponential();
            sum += x;
        }
        for (double& x : p.powers) x *= budget / sum;
        out.push_back(std::move(p));
    }
    return out;
}

SaddlePointReport verify_saddle_point(const OfdmParams& params, const NoiseModel& noise,
                                      const UncertaintyClass& cls, const ObjectiveConfig& cfg,
                                      const RobustSolution& solution, std::size_t n_samples,
                                      std::uint64_t seed) {
    const auto responses = sample_responses(cls, n_samples, seed);
    const auto allocations = sample_allocations(cls.size(), solution.allocation.budget, n_samples, seed);
    return check_saddle_point(params, noise, cls, cfg, solution, responses, allocations);
}

bool worst_allocation_condition(const InverseCnrs& inv, const JointCoefficients& coeffs,
                                std::size_t m1) {
    inv.validate();
    validate_coefficients(coeffs);
    if (m1 >= inv.size()) throw DimensionError("worst_allocation_condition: index out of range");

    double left = -std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < inv.size(); ++m) {
        if (m == m1) continue;
        left = std::max(left, coeffs.alpha / inv.radar_inv[m] + coeffs.beta / inv.comm_inv[m]);
    }
    const double right =
        coeffs.alpha / (1.0 + inv.radar_inv[m1]) + coeffs.beta / (1.0 + inv.comm_inv[m1]);
    return left <= right;
}

WorstAllocationReport verify_worst_allocation(const CnrProfile& cnr,
                                              const JointCoefficients& coeffs, double grid_step,
                                              double budget) {
    cnr.validate();
    validate_coefficients(coeffs);
    const std::size_t n = cnr.size();
    if (n > kMaxWorstAllocationSubcarriers)
        throw PreconditionError("verify_worst_allocation: at most four subcarriers are enumerable");
    if (!(grid_step > 0.0) || !std::isfinite(grid_step))
        throw DomainError("verify_worst_allocation: grid step must be positive");
    if (!(budget >= 0.0) || !std::isfinite(budget))
        throw DomainError("verify_worst_allocation: budget must be nonnegative");

    const double nu_min = *std::min_element(cnr.radar_cnr.begin(), cnr.radar_cnr.end());
    const double varpi_min = *std::min_element(cnr.comm_cnr.begin(), cnr.comm_cnr.end());
    std::size_t minimizer = n;
    for (std::size_t m = 0; m < n; ++m) {
        if (cnr.radar_cnr[m] == nu_min && cnr.comm_cnr[m] == varpi_min) {
            minimizer = m;
            break;
        }
    }
    if (minimizer == n)
        throw PreconditionError("verify_worst_allocation: no subcarrier minimizes both CNRs");

    const auto steps = static_cast<std::size_t>(std::llround(budget / grid_step));
    const double h = steps > 0 ? budget / static_cast<double>(steps) : 0.0;

    // Per-subcarrier criterion on the grid; the objective is separable.
    std::vector<std::vector<double>> table(n, std::vector<double>(steps + 1));
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t k = 0; k <= steps; ++k) {
            const double p = h * static_cast<double>(k);
            table[m][k] = coeffs.alpha * std::log1p(p * cnr.radar_cnr[m]) +
                          coeffs.beta * std::log1p(p * cnr.comm_cnr[m]);
        }
    }

    WorstAllocationReport report;
    report.minimizer = minimizer;
    std::vector<double> concentrated(n, 0.0);
    concentrated[minimizer] = budget;
    report.concentrated_value = joint_criterion(concentrated, cnr, coeffs);
    report.min_margin = std::numeric_limits<double>::infinity();

    // Grid point with all power on the minimizer, evaluated through the
    // table so it compares equal to itself.
    double table_concentrated = 0.0;
    for (std::size_t m = 0; m < n; ++m) table_concentrated += table[m][m == minimizer ? steps : 0];

    std::vector<std::size_t> counts(n, 0);
    auto visit = [&](auto&& self, std::size_t index, std::size_t remaining, double partial) -> void {
        if (index + 1 == n) {
            const double value = partial + table[index][remaining];
            const double margin = value - table_concentrated;
            report.min_margin = std::min(report.min_margin, margin);
            ++report.grid_points;
            if (margin < -kWorstAllocationSlack) ++report.violations;
            return;
        }
        for (std::size_t k = 0; k <= remaining; ++k)
            self(self, index + 1, remaining - k, partial + table[index][k]);
    };
    visit(visit, 0, steps, 0.0);
    return report;
}

}  // namespace ircw
