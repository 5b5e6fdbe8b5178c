#pragma once
//
// Finite truncations of the representation of C(SU_q(2)) on l2(N) (x) l2(Z):
//
//   pi(a) xi_{n,k} = sqrt(1 - q^{2n}) xi_{n-1,k}     (xi_{-1,k} = 0)
//   pi(b) xi_{n,k} = q^n xi_{n,k+1}
//
// restricted to n < N and |k| <= K with a hard (zero) boundary.  Basis vectors
// are ordered (n, k) lexicographically.  The matrices are real and stored
// sparse; `Real` may be a multiprecision type.
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <Eigen/Sparse>

#include "awf/check.hpp"
#include "awf/qalg.hpp"
#include "awf/states.hpp"

namespace awf {

template <class Real = double>
struct TruncationConfig {
    std::size_t N = 64;  ///< cutoff of the l2(N) leg
    std::size_t K = 32;  ///< window [-K, K] of the l2(Z) leg
    Real q = Real(0.5);

    void validate() const
    {
        if (N < 4 || K < 2)
            throw std::invalid_argument("truncation needs N >= 4 and K >= 2");
        if (!(q > Real(0) && q < Real(1)))
            throw domain_error("deformation parameter must satisfy 0 < q < 1");
    }
    std::size_t width() const noexcept { return 2 * K + 1; }
    std::size_t dim() const noexcept { return N * width(); }
    Eigen::Index index(std::size_t n, long k) const noexcept
    {
        return static_cast<Eigen::Index>(n * width() + static_cast<std::size_t>(k + static_cast<long>(K)));
    }
    /// Inside the interior subspace n <= N-1-margin, |k| <= K-margin.
    bool interior(std::size_t n, long k, std::size_t margin) const noexcept
    {
        return n + margin <= N - 1 && static_cast<std::size_t>(std::abs(k)) + margin <= K;
    }
};

template <class Real>
using Operator = Eigen::SparseMatrix<Real, Eigen::ColMajor>;

namespace detail {

template <class Real>
Real ipow(Real x, std::size_t e)
{
    Real r(1);
    for (std::size_t i = 0; i < e; ++i)
        r *= x;
    return r;
}

}  // namespace detail

template <class Real = double>
struct TruncatedRep {
    TruncationConfig<Real> cfg;
    Operator<Real> a;      ///< pi(a)
    Operator<Real> b;      ///< pi(b)
    Operator<Real> shift;  ///< 1 (x) S
    Operator<Real> identity;

    Operator<Real> generator(SUq2Gen g) const
    {
        switch (g) {
        case SUq2Gen::a: return a;
        case SUq2Gen::a_star: return Operator<Real>(a.transpose());
        case SUq2Gen::b: return b;
        case SUq2Gen::b_star: return Operator<Real>(b.transpose());
        }
        return identity;
    }
    Operator<Real> generator(HGen g) const
    {
        switch (g) {
        case HGen::t: return shift;
        case HGen::t_star: return Operator<Real>(shift.transpose());
        default: return generator(static_cast<SUq2Gen>(static_cast<int>(g)));
        }
    }

    /// pi(g_1 g_2 ... g_L) as a matrix product.
    template <class Gen>
    Operator<Real> word(std::span<const Gen> gens) const
    {
        Operator<Real> r = identity;
        for (const Gen& g : gens)
            r = Operator<Real>(r * generator(g));
        return r;
    }
    Operator<Real> word(const SUq2Monomial& m) const
    {
        const auto g = m.generators();
        return word(std::span<const SUq2Gen>(g));
    }
};

template <class Real = double>
TruncatedRep<Real> build_truncated_rep(const TruncationConfig<Real>& cfg)
{
    using std::sqrt;
    cfg.validate();
    const auto dim = static_cast<Eigen::Index>(cfg.dim());
    const long K = static_cast<long>(cfg.K);
    std::vector<Eigen::Triplet<Real>> ta, tb, ts, ti;
    const Real q2 = cfg.q * cfg.q;
    Real qn(1), q2n(1);  // q^n, q^{2n}
    for (std::size_t n = 0; n < cfg.N; ++n) {
        for (long k = -K; k <= K; ++k) {
            const auto col = cfg.index(n, k);
            ti.emplace_back(col, col, Real(1));
            if (n >= 1)
                ta.emplace_back(cfg.index(n - 1, k), col, sqrt(Real(1) - q2n));
            if (k < K) {
                tb.emplace_back(cfg.index(n, k + 1), col, qn);
                ts.emplace_back(cfg.index(n, k + 1), col, Real(1));
            }
        }
        qn *= cfg.q;
        q2n *= q2;
    }
    TruncatedRep<Real> rep{cfg, Operator<Real>(dim, dim), Operator<Real>(dim, dim), Operator<Real>(dim, dim),
                           Operator<Real>(dim, dim)};
    rep.a.setFromTriplets(ta.begin(), ta.end());
    rep.b.setFromTriplets(tb.begin(), tb.end());
    rep.shift.setFromTriplets(ts.begin(), ts.end());
    rep.identity.setFromTriplets(ti.begin(), ti.end());
    return rep;
}

// ---------------------------------------------------------------------------
// relation residuals
// ---------------------------------------------------------------------------

struct RelationResidual {
    std::string relation;
    double interior = 0.0;  ///< Frobenius norm over interior columns (bounds the operator norm)
    double boundary = 0.0;  ///< largest column norm among the remaining columns
};

template <class Real>
std::vector<RelationResidual> relation_residuals(const TruncatedRep<Real>& rep, std::size_t margin = 2)
{
    const auto& cfg = rep.cfg;
    const Operator<Real> as = rep.a.transpose(), bs = rep.b.transpose();
    const Operator<Real>& a = rep.a;
    const Operator<Real>& b = rep.b;
    const Operator<Real>& one = rep.identity;
    const Real q = cfg.q;
    const Real q2 = q * q;

    const std::vector<std::pair<std::string, Operator<Real>>> rel = {
        {"a*a + b*b - 1", Operator<Real>(as * a + bs * b - one)},
        {"aa* + q^2 bb* - 1", Operator<Real>(a * as + q2 * Operator<Real>(b * bs) - one)},
        {"ab - q ba", Operator<Real>(a * b - q * Operator<Real>(b * a))},
        {"a*b - q^-1 ba*", Operator<Real>(as * b - Operator<Real>(b * as) / q)},
        {"bb* - b*b", Operator<Real>(b * bs - bs * b)},
    };

    std::vector<RelationResidual> out;
    const long K = static_cast<long>(cfg.K);
    for (const auto& [name, r] : rel) {
        double interior2 = 0.0, boundary = 0.0;
        for (std::size_t n = 0; n < cfg.N; ++n)
            for (long k = -K; k <= K; ++k) {
                const auto col = cfg.index(n, k);
                double c2 = 0.0;
                for (typename Operator<Real>::InnerIterator it(r, col); it; ++it) {
                    const double v = static_cast<double>(it.value());
                    c2 += v * v;
                }
                if (cfg.interior(n, k, margin))
                    interior2 += c2;
                else
                    boundary = std::max(boundary, std::sqrt(c2));
            }
        out.push_back({name, std::sqrt(interior2), boundary});
    }
    return out;
}

// ---------------------------------------------------------------------------
// numeric Haar state
// ---------------------------------------------------------------------------

/// Weights (1 - q^2) q^{2n} at the k = 0 column, n < N; total deficit q^{2N}.
template <class Real = double>
struct NumericState {
    std::vector<Real> weights;
    Real deficit;

    explicit NumericState(const TruncationConfig<Real>& cfg)
    {
        const Real q2 = cfg.q * cfg.q;
        Real w = Real(1) - q2;
        for (std::size_t n = 0; n < cfg.N; ++n) {
            weights.push_back(w);
            w *= q2;
        }
        deficit = detail::ipow(q2, cfg.N);
    }
};

template <class Real = double>
struct NumericValue {
    Real value;
    Real deficit_bound;  ///< q^{2N} * growth
};

/// sum_n w_n <x xi_{n,0}, xi_{n,0}>.  `growth` bounds |<x xi, xi>| beyond the
/// cutoff (1 for words in the generators, which all have norm <= 1).
template <class Real>
NumericValue<Real> psi_numeric(const Operator<Real>& x, const TruncationConfig<Real>& cfg, Real growth = Real(1))
{
    const NumericState<Real> st(cfg);
    Real acc(0);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        const auto i = cfg.index(n, 0);
        acc += st.weights[n] * x.coeff(i, i);
    }
    return {acc, st.deficit * growth};
}

/// psi(x) for a normal monomial from the first N terms of the weighted
/// diagonal series.  The operator is realized on a space padded by deg(x) so
/// the summed matrix elements are exact; the only error is the tail.
/// Absolute rounding allowance of a series summed to a value of size
/// `magnitude`; needed where the bound holds with equality (the unit monomial).
template <class Real>
Real rounding_slack(const Real& magnitude)
{
    return Real(256) * std::numeric_limits<Real>::epsilon() * (Real(1) + magnitude);
}

template <class Real>
NumericValue<Real> psi_numeric(const SUq2Monomial& x, const TruncationConfig<Real>& cfg)
{
    const std::size_t deg = x.degree();
    TruncationConfig<Real> padded{cfg.N + deg, std::max<std::size_t>(2, deg + 1), cfg.q};
    const auto rep = build_truncated_rep(padded);
    const Operator<Real> op = rep.word(x);
    const NumericState<Real> st(cfg);
    Real acc(0);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        const auto i = padded.index(n, 0);
        acc += st.weights[n] * op.coeff(i, i);
    }
    return {acc, st.deficit};
}

/// psi_closed_form against the series for every normal monomial of degree
/// <= max_degree, bound q^{2N} 2^degree.
template <class Real>
CheckReport check_psi_series(const TruncationConfig<Real>& cfg, std::size_t max_degree = 8)
{
    using std::abs;
    CheckReport report{"psi-series", {}, std::nullopt};
    const Real q = cfg.q;
    const Real q2 = q * q;
    for (std::size_t deg = 0; deg <= max_degree; ++deg)
        for (unsigned k = 0; k <= deg; ++k)
            for (unsigned m = 0; m + k <= deg; ++m)
                for (bool dag : {false, true}) {
                    if (dag && k == 0)
                        continue;
                    const unsigned n = static_cast<unsigned>(deg) - k - m;
                    const auto x = SUq2Monomial::make(dag, k, m, n);
                    const Real closed = (k == 0 && m == n)
                                            ? (Real(1) - q2) / (Real(1) - detail::ipow(q2, m + 1))
                                            : Real(0);
                    const auto num = psi_numeric(x, cfg);
                    const Real tol = num.deficit_bound * detail::ipow(Real(2), deg) + rounding_slack(closed);
                    const Real diff = abs(closed - num.value);
                    CheckRecord r = bound("psi closed form = series", static_cast<double>(diff),
                                          static_cast<double>(tol),
                                          {{"monomial", to_string(x)}, {"N", cfg.N}, {"q", static_cast<double>(q)}});
                    r.pass = diff <= tol;
                    r.outcome = r.pass ? "pass" : "fail";
                    r.lhs = static_cast<double>(closed);
                    r.rhs = static_cast<double>(num.value);
                    report.records.push_back(std::move(r));
                }
    return report;
}

/// Interior relation residuals gated at `tol`; boundary residuals are
/// recorded with no gate (the hard cutoff makes them O(1)).
template <class Real>
CheckReport check_relations_numeric(const TruncationConfig<Real>& cfg, double tol = 1e-12, std::size_t margin = 2)
{
    CheckReport report{"relations-numeric", {}, std::nullopt};
    const auto rep = build_truncated_rep(cfg);
    for (const auto& r : relation_residuals(rep, margin)) {
        CheckRecord rec = bound("interior residual " + r.relation, r.interior, tol,
                                {{"N", cfg.N}, {"K", cfg.K}, {"q", static_cast<double>(cfg.q)},
                                 {"boundary_residual", r.boundary}, {"margin", margin}});
        report.records.push_back(std::move(rec));
    }
    return report;
}

/// psi from the truncated series at increasing N: the error must respect
/// q^{2N} 2^deg at each N.  A few sample monomials.
template <class Real>
CheckReport check_truncation(Real q, const std::vector<std::size_t>& cutoffs = {16, 32, 64})
{
    using std::abs;
    CheckReport report{"truncation", {}, std::nullopt};
    const std::vector<SUq2Monomial> sample = {SUq2Monomial::make(false, 0, 1, 1), SUq2Monomial::make(false, 0, 2, 2),
                                              SUq2Monomial::make(true, 2, 1, 1), SUq2Monomial::make(false, 0, 3, 3)};
    const Real q2 = q * q;
    for (const auto& x : sample) {
        const Real closed =
            (x.k == 0 && x.m == x.n) ? (Real(1) - q2) / (Real(1) - detail::ipow(q2, x.m + 1)) : Real(0);
        for (std::size_t N : cutoffs) {
            const TruncationConfig<Real> cfg{N, 2, q};
            const auto num = psi_numeric(x, cfg);
            const Real tol = num.deficit_bound * detail::ipow(Real(2), x.degree()) + rounding_slack(closed);
            const Real diff = abs(closed - num.value);
            CheckRecord r = bound("truncated psi error", static_cast<double>(diff), static_cast<double>(tol),
                                  {{"monomial", to_string(x)}, {"N", N}, {"q", static_cast<double>(q)}});
            r.pass = diff <= tol;
            r.outcome = r.pass ? "pass" : "fail";
            report.records.push_back(std::move(r));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// polar decomposition
// ---------------------------------------------------------------------------

template <class Matrix>
struct PolarFactors {
    Matrix unitary;   ///< partial isometry, isometric on the closure of range(P)
    Matrix positive;  ///< (x* x)^{1/2}
    Eigen::Index rank = 0;
    bool rank_deficient = false;
    bool diagonal_gram = false;  ///< computed by the exact diagonal path
};

/// x = U P via the singular value decomposition x = W S V*:  P = V S V*,
/// U = sum over nonzero singular values of w_i v_i*.
inline PolarFactors<Eigen::MatrixXcd> polar_decompose(const Eigen::MatrixXcd& x, double rank_tol = 1e-12)
{
    PolarFactors<Eigen::MatrixXcd> out;
    const Eigen::Index n = x.cols();
    if (x.size() == 0) {
        out.unitary = Eigen::MatrixXcd::Zero(x.rows(), n);
        out.positive = Eigen::MatrixXcd::Zero(n, n);
        return out;
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const auto& W = svd.matrixU();
    const auto& V = svd.matrixV();
    const double smax = s.size() ? s(0) : 0.0;
    out.positive = V * s.cast<std::complex<double>>().asDiagonal() * V.adjoint();
    out.unitary = Eigen::MatrixXcd::Zero(x.rows(), n);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > rank_tol * std::max(1.0, smax)) {
            out.unitary += W.col(i) * V.col(i).adjoint();
            ++out.rank;
        }
    }
    out.rank_deficient = out.rank < n;
    return out;
}

/// Polar decomposition of a sparse real operator.  When x* x is diagonal (the
/// case for weighted partial shifts such as pi(b)) P is its entrywise square
/// root and U = x P^+ exactly; otherwise falls back to the dense SVD.
template <class Real>
PolarFactors<Operator<Real>> polar_decompose(const Operator<Real>& x)
{
    using std::sqrt;
    PolarFactors<Operator<Real>> out;
    const Operator<Real> gram = Operator<Real>(x.transpose()) * x;
    bool diagonal = true;
    for (Eigen::Index c = 0; c < gram.outerSize() && diagonal; ++c)
        for (typename Operator<Real>::InnerIterator it(gram, c); it; ++it)
            if (it.row() != it.col() && it.value() != Real(0)) {
                diagonal = false;
                break;
            }
    if (!diagonal) {
        if (x.cols() > 2000)
            throw std::runtime_error("dense polar decomposition refused above dimension 2000");
        const Eigen::MatrixXcd dense = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>(x).template cast<double>()
                                           .template cast<std::complex<double>>();
        auto pd = polar_decompose(dense);
        out.unitary = pd.unitary.real().template cast<Real>().sparseView();
        out.positive = pd.positive.real().template cast<Real>().sparseView();
        out.rank = pd.rank;
        out.rank_deficient = pd.rank_deficient;
        return out;
    }
    const Eigen::Index n = x.cols();
    std::vector<Eigen::Triplet<Real>> tp;
    Eigen::Matrix<Real, Eigen::Dynamic, 1> inv = Eigen::Matrix<Real, Eigen::Dynamic, 1>::Zero(n);
    for (Eigen::Index c = 0; c < n; ++c) {
        const Real g = gram.coeff(c, c);
        if (g > Real(0)) {
            const Real p = sqrt(g);
            tp.emplace_back(c, c, p);
            inv(c) = Real(1) / p;
            ++out.rank;
        }
    }
    out.positive = Operator<Real>(n, n);
    out.positive.setFromTriplets(tp.begin(), tp.end());
    out.unitary = x * inv.asDiagonal();
    out.unitary.prune(Real(0));
    out.rank_deficient = out.rank < n;
    out.diagonal_gram = true;
    return out;
}

// ---------------------------------------------------------------------------
// polar identities for b
// ---------------------------------------------------------------------------

namespace detail {

/// Frobenius norm of the interior columns of x.
template <class Real>
double interior_norm(const Operator<Real>& x, const TruncationConfig<Real>& cfg, std::size_t margin)
{
    double s = 0.0;
    const long K = static_cast<long>(cfg.K);
    for (std::size_t n = 0; n < cfg.N; ++n)
        for (long k = -K; k <= K; ++k) {
            if (!cfg.interior(n, k, margin))
                continue;
            for (typename Operator<Real>::InnerIterator it(x, cfg.index(n, k)); it; ++it) {
                const double v = static_cast<double>(it.value());
                s += v * v;
            }
        }
    return std::sqrt(s);
}

}  // namespace detail

/// |b| = sum_n q^n e(n,n) (x) 1 on the truncation.
template <class Real>
Operator<Real> abs_b(const TruncationConfig<Real>& cfg)
{
    std::vector<Eigen::Triplet<Real>> t;
    Real qn(1);
    const long K = static_cast<long>(cfg.K);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        for (long k = -K; k <= K; ++k)
            t.emplace_back(cfg.index(n, k), cfg.index(n, k), qn);
        qn *= cfg.q;
    }
    const auto d = static_cast<Eigen::Index>(cfg.dim());
    Operator<Real> m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

/// b = (1 (x) S)|b| and (1 (x) S*) b* = (1 (x) S^-2) |b| on the interior,
/// with unitary parts read off numeric polar decompositions.
inline CheckReport check_b_polar_identities(const TruncationConfig<double>& cfg, double tol = 1e-10,
                                            std::size_t margin = 2)
{
    CheckReport report{"polar", {}, std::nullopt};
    const auto rep = build_truncated_rep(cfg);
    const nlohmann::json in = {{"N", cfg.N}, {"K", cfg.K}, {"q", cfg.q}, {"margin", margin}};
    const Operator<double> absb = abs_b(cfg);
    const Operator<double> T = rep.shift;
    const Operator<double> Ts = T.transpose();

    const auto pb = polar_decompose(rep.b);
    report.records.push_back(bound("b - (1(x)S)|b|", detail::interior_norm(Operator<double>(rep.b - T * absb), cfg, margin),
                                   tol, in));
    report.records.push_back(bound("numeric |b| - sum q^n e(n,n)(x)1",
                                   detail::interior_norm(Operator<double>(pb.positive - absb), cfg, margin), tol, in));
    report.records.push_back(bound("unitary part of b - (1(x)S)",
                                   detail::interior_norm(Operator<double>(pb.unitary - T), cfg, margin), tol, in));

    // eigenvalues of |b| on the interior are q^n
    double eig = 0.0;
    const long K = static_cast<long>(cfg.K);
    double qn = 1.0;
    for (std::size_t n = 0; n < cfg.N; ++n, qn *= cfg.q)
        for (long k = -K; k <= K; ++k)
            if (cfg.interior(n, k, margin))
                eig = std::max(eig, std::abs(pb.positive.coeff(cfg.index(n, k), cfg.index(n, k)) - qn));
    report.records.push_back(bound("spectrum of |b| = {q^n}", eig, tol, in));

    // (1 (x) S*) b*: unitary part 1 (x) S^-2, whose adjoint is 1 (x) S^2
    const Operator<double> x = Ts * Operator<double>(rep.b.transpose());
    const auto px = polar_decompose(x);
    const Operator<double> Ts2 = Ts * Ts;
    const Operator<double> T2 = T * T;
    report.records.push_back(bound("(1(x)S*)b* - (1(x)S^-2)|b|",
                                   detail::interior_norm(Operator<double>(x - Ts2 * absb), cfg, margin), tol, in));
    report.records.push_back(bound("unitary part of (1(x)S*)b* - (1(x)S^-2)",
                                   detail::interior_norm(Operator<double>(px.unitary - Ts2), cfg, margin), tol, in));
    report.records.push_back(bound("adjoint of that unitary part - (1(x)S^2)",
                                   detail::interior_norm(Operator<double>(Operator<double>(px.unitary.transpose()) - T2),
                                                         cfg, margin + 2),
                                   tol, in));
    report.records.push_back(bound("positive part of (1(x)S*)b* - |b|",
                                   detail::interior_norm(Operator<double>(px.positive - absb), cfg, margin), tol, in));
    return report;
}

}  // namespace awf
