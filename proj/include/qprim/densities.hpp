#pragma once

// Euler-product densities and constants: the primitive-root quality delta(f)
// and its closed-form relatives, Dirichlet L-values of quadratic characters,
// the Hardy-Littlewood constant C(Delta), the Bateman-Horn constant H(f), and
// the expected-maximum model for streak lengths.

#include "qprim/charsums.hpp"
#include "qprim/int128.hpp"
#include "qprim/poly.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace qprim::densities {

enum class Method { direct, accelerated };

std::string_view to_string(Method m);

/// A truncated (possibly tail-corrected) product together with an estimate of
/// the absolute error committed by stopping at `cutoff`.
struct DensityReport {
    double value = 0;
    u64 cutoff = 0;  // largest prime bound included
    double tail_bound = 0;
    Method method = Method::direct;
};

struct LValue {
    int s = 0;
    charsums::FundamentalDiscriminant D{};
    long double value = 0;
    double abs_error = 0;
};

inline constexpr u64 kDefaultProductCutoff = 100000;
inline constexpr u64 kDefaultDeltaCutoff = 1000000;
inline constexpr u64 kDefaultArtinCutoff = 10000000;
inline constexpr double kDefaultLTolerance = 1e-9;

/// L(s, chi_D) for s in {1, 2} from Hurwitz zeta / digamma values at a/|D|,
/// each evaluated by Euler-Maclaurin with an explicit remainder.
LValue L_chi(int s, const charsums::FundamentalDiscriminant& D, double tol = kDefaultLTolerance);

/// C(Delta) = prod_{q>=3} (1 - (Delta/q)/(q-1)) for Delta < 0, Delta = 5 mod 8,
/// evaluated through L(1), L(2) and a rapidly convergent split-prime product.
/// cutoff = 0 picks the smallest cutoff whose tail bound is below tol.
DensityReport hl_constant(i128 Delta, double tol = kDefaultLTolerance, u64 cutoff = 0);

/// The slowly convergent defining product of C(Delta), truncated at cutoff.
DensityReport hl_constant_direct(i128 Delta, u64 cutoff);

/// prod_{q>=3} (1 - chi(q)/(q^s - 1)) via the zeta/L-value identity.
DensityReport euler_product_s(int s, const charsums::FundamentalDiscriminant& D,
                              double tol = kDefaultLTolerance, u64 cutoff = kDefaultProductCutoff);

/// Left-hand side of the same identity, truncated directly at cutoff.
DensityReport euler_product_direct(int s, const charsums::FundamentalDiscriminant& D, u64 cutoff);

/// delta(f) = prod_{q>2} (1 - #{f = 1 mod q} / (q #{f != 0 mod q})).
/// With accelerate (quadratic f only), the tail beyond cutoff is estimated from
/// the s = 2 identity.
DensityReport delta(const poly::PolyZ& f, u64 cutoff = kDefaultDeltaCutoff, bool accelerate = false);

/// Closed-form approximation of delta for f = AX^2 + B.
DensityReport delta1(i128 A, i128 B, u64 cutoff = kDefaultDeltaCutoff);

/// prod_{(D/q) = 1} (1 - 2/q^2); Lehmer's estimate for D = -163.
DensityReport lehmer_naive(i128 D = -163, u64 cutoff = kDefaultDeltaCutoff);

/// prod_{(D/q) = 1} (1 - 2/(q(q - 1 - (twist/q)))): the estimate corrected for
/// allowable residue classes.
DensityReport p1_corrected(i128 D = -163, i128 twist = -978, u64 cutoff = kDefaultDeltaCutoff);

/// B = prod_q (1 + 1/(q-1)^2), truncated at cutoff.
DensityReport artin_B(u64 cutoff = kDefaultArtinCutoff);

/// prod (p_i - 1)/phi(p_i - 1) over a list of odd primes.
double q_product(std::span<const u64> primes);

/// log10 of the "small g" bound |g| < 10^{c/3} attached to a streak of length c.
double small_g_exponent_definition(std::uint64_t c);

/// log10 B^s, the heuristic size of the least common primitive root of s primes
/// (about 0.45 s).
double small_g_exponent_heuristic(std::uint64_t s);

/// log10 of the likelihood measure 10^{-m/2} for c_g(f) = m.
double streak_likelihood_exponent(std::uint64_t m);

/// M(p1, s): expected maximum of s independent geometric streaks with
/// per-step success probability p1.
double expected_max(double p1, std::uint64_t s);

/// (1/log(1/p1)) H_s - 1/2.
double expected_max_harmonic(double p1, std::uint64_t s);

/// log s / log(1/p1).
double expected_max_asymptotic(double p1, std::uint64_t s);

struct MonteCarloEstimate {
    double mean = 0;
    double stderr_ = 0;
};

/// Simulated mean of the maximum of s geometric streak lengths over `trials`
/// repetitions; deterministic for a fixed seed.
MonteCarloEstimate monte_carlo_max(double p1, std::uint64_t s, std::uint64_t trials, std::uint64_t seed);

struct BatemanHornReport {
    DensityReport density;
    bool irreducibility_assumed = false;  // degree > 2: not checked
};

/// H(f) = prod_p (1 - N_p/p)/(1 - 1/p), truncated at cutoff.
BatemanHornReport bateman_horn_H(const poly::PolyZ& f, u64 cutoff = kDefaultDeltaCutoff);

/// Number of roots of quadratic f modulo the prime p (Legendre-symbol count;
/// enumeration for p = 2 and p | a).
u64 quadratic_root_count(const poly::QuadraticPoly& f, u64 p);

} // namespace qprim::densities
