#pragma once
//
// State oracles on the concrete algebras and the embedding
//
//   Phi : L^inf(SU_q(2)) -> B(l2 N) (x) L(Z)
//   Phi(a) = sum_{n>=1} sqrt(1 - q^{2n}) e(n-1,n) (x) 1
//   Phi(b) = sum_{n>=0} q^n e(n,n) (x) S
//
// Phi(word) is a single "band"  sum_n c(n) e(n+delta, n) (x) S^s  whose
// coefficient c(n) is a path product; the (omega (x) tau)-value of a band is
// a weighted diagonal series summed up to a certified geometric tail.
//

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "awf/ncpoly.hpp"
#include "awf/qalg.hpp"
#include "awf/scalar.hpp"

namespace awf {

/// Requested tolerance cannot be certified below the summation cutoff limit.
class precision_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double default_tolerance = 1e-10;

// ---------------------------------------------------------------------------
// closed-form states
// ---------------------------------------------------------------------------

/// Haar state of L(Z): tau(S^n) = [n == 0].
template <CoefficientField F>
typename F::value_type tau(const F& field, long n)
{
    return field.constant(n == 0 ? 1 : 0);
}

/// omega(e(i,j)) = [i == j] (1 - q^2) q^{2i};  omega(1) = 1.
template <CoefficientField F>
typename F::value_type omega(const F& field, const MatrixMono& m)
{
    if (m.identity)
        return field.constant(1);
    if (m.i != m.j)
        return field.constant(0);
    return (field.constant(1) - field.q_pow(2)) * field.q_pow(2 * static_cast<long>(m.i));
}

template <CoefficientField F>
typename F::value_type omega(const F& field, const NCPoly<MatrixMono, typename F::value_type>& p)
{
    typename F::value_type acc = field.constant(0);
    for (const auto& [m, c] : p)
        acc = acc + c * omega(field, m);
    return acc;
}

template <CoefficientField F>
typename F::value_type omega_tensor_tau(const F& field, const TensorMono& m)
{
    const auto left = m.identity_leg ? MatrixMono::unit() : MatrixMono::e(m.i, m.j);
    return omega(field, left) * tau(field, m.n);
}

template <CoefficientField F>
typename F::value_type omega_tensor_tau(const F& field, const NCPoly<TensorMono, typename F::value_type>& p)
{
    typename F::value_type acc = field.constant(0);
    for (const auto& [m, c] : p)
        acc = acc + c * omega_tensor_tau(field, m);
    return acc;
}

/// psi(a^k b^m b*^n) = psi(a*^k b^m b*^n) = [k == 0][m == n] (1 - q^2) / (1 - q^{2(m+1)}).
template <CoefficientField F>
typename F::value_type psi_closed_form(const F& field, const SUq2Monomial& x)
{
    if (x.k != 0 || x.m != x.n)
        return field.constant(0);
    const auto one = field.constant(1);
    return (one - field.q_pow(2)) / (one - field.q_pow(2 * (static_cast<long>(x.m) + 1)));
}

template <CoefficientField F>
typename F::value_type psi_closed_form(const F& field, const SUq2Poly<typename F::value_type>& p)
{
    typename F::value_type acc = field.constant(0);
    for (const auto& [m, c] : p)
        acc = acc + c * psi_closed_form(field, m);
    return acc;
}

/// psi on a^k b^m b*^n T^t with T = 1 (x) S central:
/// [k == 0][m - n + t == 0] (1 - q^2) / (1 - q^{2 + m + n}).
template <CoefficientField F>
typename F::value_type psi_closed_form(const F& field, const HMonomial& x)
{
    const auto& [dag, k, m, n] = x.base;
    if (k != 0 || static_cast<long>(m) - static_cast<long>(n) + x.t != 0)
        return field.constant(0);
    const auto one = field.constant(1);
    return (one - field.q_pow(2)) / (one - field.q_pow(2 + static_cast<long>(m + n)));
}

/// Type-erased state on one algebra, evaluated linearly on NCPoly.
template <class Mono, class Scalar>
struct StateOracle {
    AlgebraTag tag;
    std::function<Scalar(const Mono&)> on_monomial;

    Scalar operator()(const Mono& m) const { return on_monomial(m); }
    Scalar operator()(const NCPoly<Mono, Scalar>& p) const
    {
        Scalar acc{};
        for (const auto& [m, c] : p)
            acc = acc + c * on_monomial(m);
        return acc;
    }
};

template <CoefficientField F>
StateOracle<SUq2Monomial, typename F::value_type> psi_oracle(F field)
{
    return {AlgebraTag::suq2, [field](const SUq2Monomial& m) { return psi_closed_form(field, m); }};
}

template <CoefficientField F>
StateOracle<MatrixMono, typename F::value_type> omega_oracle(F field)
{
    return {AlgebraTag::matrix_units, [field](const MatrixMono& m) { return omega(field, m); }};
}

template <CoefficientField F>
StateOracle<TensorMono, typename F::value_type> omega_tensor_tau_oracle(F field)
{
    return {AlgebraTag::tensor, [field](const TensorMono& m) { return omega_tensor_tau(field, m); }};
}

// ---------------------------------------------------------------------------
// bands: the images of SU_q(2) (and of T = 1 (x) S) in B(l2 N) (x) L(Z)
// ---------------------------------------------------------------------------

enum class HGen : std::uint8_t { a, a_star, b, b_star, t, t_star };

inline HGen to_hgen(SUq2Gen g) { return static_cast<HGen>(static_cast<int>(g)); }

inline HGen star(HGen g)
{
    switch (g) {
    case HGen::a: return HGen::a_star;
    case HGen::a_star: return HGen::a;
    case HGen::b: return HGen::b_star;
    case HGen::b_star: return HGen::b;
    case HGen::t: return HGen::t_star;
    case HGen::t_star: return HGen::t;
    }
    return g;
}

/// Phi of a generator word:  sum_n coefficient(n) e(n + row_shift, n) (x) S^s_power.
class Band {
public:
    Band() = default;
    explicit Band(std::vector<HGen> word) : word_(std::move(word))
    {
        for (HGen g : word_) {
            switch (g) {
            case HGen::a: --row_shift_; break;
            case HGen::a_star: ++row_shift_; break;
            case HGen::b: case HGen::t: ++s_power_; break;
            case HGen::b_star: case HGen::t_star: --s_power_; break;
            }
        }
    }

    long row_shift() const noexcept { return row_shift_; }
    long s_power() const noexcept { return s_power_; }
    const std::vector<HGen>& word() const noexcept { return word_; }
    bool diagonal() const noexcept { return row_shift_ == 0; }

    /// Path product <Phi(word) xi_col, xi_{col + row_shift}>; zero once the
    /// path leaves l2(N).
    double coefficient(double q, std::size_t column) const
    {
        long row = static_cast<long>(column);
        double amp = 1.0;
        for (auto it = word_.rbegin(); it != word_.rend(); ++it) {
            switch (*it) {
            case HGen::a:
                if (row <= 0)
                    return 0.0;
                amp *= std::sqrt(1.0 - std::pow(q, 2.0 * static_cast<double>(row)));
                --row;
                break;
            case HGen::a_star:
                amp *= std::sqrt(1.0 - std::pow(q, 2.0 * static_cast<double>(row + 1)));
                ++row;
                break;
            case HGen::b:
            case HGen::b_star:
                amp *= std::pow(q, static_cast<double>(row));
                break;
            case HGen::t:
            case HGen::t_star:
                break;
            }
            if (amp == 0.0)
                return 0.0;
        }
        return amp;
    }

private:
    std::vector<HGen> word_;
    long row_shift_ = 0;
    long s_power_ = 0;
};

/// Complex linear combination of bands (the lazy image under Phi).
struct LazyTensorSeries {
    std::vector<std::pair<Complex, Band>> terms;

    /// Sum of |coefficients|; every band has operator norm <= 1.
    double norm_bound() const
    {
        double s = 0.0;
        for (const auto& [c, band] : terms)
            s += std::abs(c);
        return s;
    }
};

struct SeriesEvaluation {
    Complex value;
    double tail_bound = 0.0;  ///< certified bound on the omitted tail
    std::size_t cutoff = 0;   ///< number of diagonal columns summed
};

struct SummationPolicy {
    double tolerance = default_tolerance;
    std::size_t max_cutoff = 200000;
};

/// Smallest N with q^{2N} * norm_bound <= tol / 10.
inline std::size_t certified_cutoff(double q, double norm_bound, const SummationPolicy& policy)
{
    if (norm_bound == 0.0)
        return 0;
    const double target = policy.tolerance / 10.0 / norm_bound;
    if (target >= 1.0)
        return 0;
    const double n = std::ceil(std::log(target) / (2.0 * std::log(q)));
    if (!(n <= static_cast<double>(policy.max_cutoff)))
        throw precision_error("tolerance " + std::to_string(policy.tolerance) +
                              " needs more than " + std::to_string(policy.max_cutoff) +
                              " summation terms at q=" + std::to_string(q));
    return static_cast<std::size_t>(n);
}

/// (omega (x) tau) of a lazy series with a certified geometric tail.
/// `survives_tau` decides which diagonal bands tau keeps; callers that go
/// through an identification of the L(Z) leg pass their own rule.
inline SeriesEvaluation evaluate_series(double q, const LazyTensorSeries& series, const SummationPolicy& policy,
                                        const std::function<bool(const Band&)>& survives_tau)
{
    const double bound = series.norm_bound();
    const std::size_t cutoff = certified_cutoff(q, bound, policy);
    const double q2 = q * q;
    Complex acc{};
    for (const auto& [c, band] : series.terms) {
        if (!band.diagonal() || !survives_tau(band))
            continue;
        double partial = 0.0;
        double weight = 1.0 - q2;
        for (std::size_t n = 0; n < cutoff; ++n) {
            partial += weight * band.coefficient(q, n);
            weight *= q2;
        }
        acc += c * partial;
    }
    return {acc, std::pow(q, 2.0 * static_cast<double>(cutoff)) * bound, cutoff};
}

inline LazyTensorSeries embed_h(std::span<const SUq2Gen> word)
{
    std::vector<HGen> h;
    h.reserve(word.size());
    for (SUq2Gen g : word)
        h.push_back(to_hgen(g));
    return {{{Complex{1.0, 0.0}, Band(std::move(h))}}};
}

template <class Scalar>
LazyTensorSeries embed_h(const SUq2Poly<Scalar>& p, const std::function<Complex(const Scalar&)>& to_complex)
{
    LazyTensorSeries s;
    for (const auto& [mono, c] : p) {
        std::vector<HGen> h;
        for (SUq2Gen g : mono.generators())
            h.push_back(to_hgen(g));
        s.terms.emplace_back(to_complex(c), Band(std::move(h)));
    }
    return s;
}

/// (omega (x) tau)(Phi(x)) for a lazy series.
inline SeriesEvaluation omega_tensor_tau(double q, const LazyTensorSeries& series,
                                         const SummationPolicy& policy = {})
{
    return evaluate_series(q, series, policy, [](const Band& b) { return b.s_power() == 0; });
}

/// (omega (x) tau)(Phi(w)) for an SU_q(2) word, summed directly from the
/// representation without using the normal form.
inline SeriesEvaluation embed_h_state(double q, const Word& w, const SummationPolicy& policy = {})
{
    const auto gens = w.suq2_generators();
    return omega_tensor_tau(q, embed_h(std::span<const SUq2Gen>(gens)), policy);
}

inline SeriesEvaluation embed_h_state(double q, const SUq2Poly<Complex>& p, const SummationPolicy& policy = {})
{
    return omega_tensor_tau(q, embed_h<Complex>(p, [](const Complex& c) { return c; }), policy);
}

}  // namespace awf
