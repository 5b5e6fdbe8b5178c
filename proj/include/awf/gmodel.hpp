#pragma once
//
// Generators of L^inf(G) inside (L(Z), tau) * (L^inf(H), psi), the
// factorization  S x = u . (T* x)  with u = S T and T = 1 (x) S, and the
// second factor M2 = W*(T* a, T* b) seen through the basis
// f(i,j) = e(i,j) (x) S^{i-j}  and the unitary 1 (x) S^2.
//

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "awf/check.hpp"
#include "awf/freeprod.hpp"
#include "awf/qalg.hpp"
#include "awf/states.hpp"

namespace awf {

/// S x, or its adjoint x* S*.
struct GGen {
    SUq2Gen x = SUq2Gen::a;
    bool adjoint = false;

    friend bool operator==(const GGen&, const GGen&) = default;
};

inline std::string to_string(const GGen& g)
{
    const std::string x = to_string(Symbol{g.x});
    return g.adjoint ? "(S" + x + ")*" : "S" + x;
}

/// S a, S a*, S b, S b* followed by their adjoints.
inline std::vector<GGen> g_alphabet()
{
    std::vector<GGen> out;
    for (bool adj : {false, true})
        for (SUq2Gen x : {SUq2Gen::a, SUq2Gen::a_star, SUq2Gen::b, SUq2Gen::b_star})
            out.push_back({x, adj});
    return out;
}

/// Uniform word of length 1..max_len; with `balanced`, a word v v* (so the
/// moment is positive rather than structurally zero).
inline std::vector<GGen> random_g_word(std::mt19937_64& rng, std::size_t max_len, bool balanced = false)
{
    const auto alpha = g_alphabet();
    if (balanced && max_len >= 2) {
        std::uniform_int_distribution<std::size_t> half(1, max_len / 2);
        std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
        std::vector<GGen> w(half(rng));
        for (auto& g : w)
            g = alpha[pick(rng)];
        for (std::size_t i = w.size(); i-- > 0;)
            w.push_back({w[i].x, !w[i].adjoint});
        return w;
    }
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, alpha.size() - 1);
    std::vector<GGen> w(len(rng));
    for (auto& g : w)
        g = alpha[pick(rng)];
    return w;
}

// ---------------------------------------------------------------------------
// the ambient free product and G
// ---------------------------------------------------------------------------

/// (L(Z), tau) * (L^inf(H) extended by T, psi) with the G-generators as
/// two-letter words.
template <CoefficientField F>
class GGeneratorSystem {
public:
    using Scalar = typename F::value_type;
    using Word = FreeLetterWord<Scalar>;

    explicit GGeneratorSystem(F field)
        : field_(field),
          shift_(std::make_shared<ShiftFactor<F>>(field)),
          haar_(std::make_shared<HaarFactor<F>>(field)),
          space_({shift_, haar_}, field.q())
    {
    }

    FreeProduct<Scalar>& space() noexcept { return space_; }
    const F& field() const noexcept { return field_; }

    Word S(long n = 1) const { return {space_.letter(0, shift_->element(n))}; }
    Word H(std::initializer_list<HGen> w) const { return {space_.letter(1, haar_->element(w))}; }
    Word H(std::span<const HGen> w) const { return {space_.letter(1, haar_->element(w))}; }

    Word generator(const GGen& g) const
    {
        if (!g.adjoint)
            return S() * H({to_hgen(g.x)});
        return H({to_hgen(star(g.x))}) * S(-1);
    }
    Word word(const std::vector<GGen>& w) const
    {
        Word r;
        for (const auto& g : w)
            r = r * generator(g);
        return r;
    }
    /// u = S (1 (x) S)
    Word u() const { return S() * H({HGen::t}); }
    /// (1 (x) S*) x
    Word m2_generator(SUq2Gen x) const { return H({HGen::t_star, to_hgen(x)}); }

    Scalar moment(const std::vector<GGen>& w) { return space_.moment(word(w)); }

private:
    F field_;
    std::shared_ptr<ShiftFactor<F>> shift_;
    std::shared_ptr<HaarFactor<F>> haar_;
    FreeProduct<Scalar> space_;
};

// ---------------------------------------------------------------------------
// M2 and the f-basis
// ---------------------------------------------------------------------------

/// f(i,j) (1 (x) S^2)^p
struct FMono {
    std::size_t i = 0, j = 0;
    long p = 0;
    friend auto operator<=>(const FMono&, const FMono&) = default;
};

inline std::string to_string(const FMono& m)
{
    std::string s = "f(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
    return m.p == 0 ? s : s + "(1(x)S^2)^" + std::to_string(m.p);
}

/// f(i,j) (1 (x) S^2)^p as an element of B(l2 N) (x) L(Z).
inline TensorMono f_to_tensor(const FMono& f)
{
    return TensorMono::e(f.i, f.j, static_cast<long>(f.i) - static_cast<long>(f.j) + 2 * f.p);
}

/// The identification f(i,j) (1 (x) S^2)^p <-> e(i,j) (x) S^p.
inline TensorMono f_identified(const FMono& f) { return TensorMono::e(f.i, f.j, f.p); }

/// Letter code of an M2 generator: 0..3 are T* x for x = a, a*, b, b*;
/// 4..7 their adjoints x* T.
inline std::vector<HGen> m2_letter_gens(long code)
{
    const auto x = static_cast<HGen>(code % 4);
    if (code < 4)
        return {HGen::t_star, x};
    return {star(x), HGen::t};
}

inline std::string m2_letter_name(long code)
{
    static constexpr const char* names[] = {"a", "a*", "b", "b*"};
    const std::string x = names[code % 4];
    return code < 4 ? "(1(x)S*)" + x : "((1(x)S*)" + x + ")*";
}

inline LazyTensorSeries m2_series(const std::vector<long>& codes)
{
    std::vector<HGen> h;
    for (long c : codes)
        for (HGen g : m2_letter_gens(c))
            h.push_back(g);
    return {{{Complex{1.0, 0.0}, Band(std::move(h))}}};
}

/// Raw image in B(l2 N) (x) L(Z), columns below `cutoff`.
inline NCPoly<TensorMono, Complex> tensor_image(double q, const LazyTensorSeries& s, std::size_t cutoff)
{
    NCPoly<TensorMono, Complex> out;
    for (const auto& [c, band] : s.terms)
        for (std::size_t n = 0; n < cutoff; ++n) {
            const long row = static_cast<long>(n) + band.row_shift();
            if (row < 0)
                continue;
            const double v = band.coefficient(q, n);
            if (v != 0.0)
                out.add_term(TensorMono::e(static_cast<std::size_t>(row), n, band.s_power()), c * v);
        }
    return out;
}

/// Expansion over f(i,j) (1 (x) S^2)^p, columns below `cutoff`.  Every M2
/// word has even  s - delta, so the expansion is exact term by term.
inline NCPoly<FMono, Complex> m2_normal_form(double q, const LazyTensorSeries& s, std::size_t cutoff)
{
    NCPoly<FMono, Complex> out;
    for (const auto& [t, c] : tensor_image(q, s, cutoff)) {
        const long d = static_cast<long>(t.i) - static_cast<long>(t.j);
        if ((t.n - d) % 2 != 0)
            throw structure_error("element is not in the span of f(i,j)(1(x)S^2)^p: " + to_string(t));
        out.add_term({t.i, t.j, (t.n - d) / 2}, c);
    }
    return out;
}

inline NCPoly<FMono, Complex> m2_normal_form(double q, const std::vector<long>& codes, std::size_t cutoff)
{
    return m2_normal_form(q, m2_series(codes), cutoff);
}

/// M2-state of a band series: expand over the f-basis up to a certified
/// cutoff, transport each term to e(i,j) (x) S^p and apply omega (x) tau.
inline SeriesEvaluation m2_state(double q, const LazyTensorSeries& s, const SummationPolicy& policy = {})
{
    const std::size_t cutoff = certified_cutoff(q, s.norm_bound(), policy);
    const FloatField f(q);
    Complex acc{};
    for (const auto& [c, band] : s.terms) {
        if (!band.diagonal())
            continue;
        LazyTensorSeries one{{{c, band}}};
        for (const auto& [fm, v] : m2_normal_form(q, one, cutoff))
            acc += v * omega_tensor_tau(f, f_identified(fm));
    }
    return {acc, std::pow(q, 2.0 * static_cast<double>(cutoff)) * s.norm_bound(), cutoff};
}

/// M2 as a free factor: formal words in the generators (no normal form),
/// state through the f-identification.  Floating coefficients only.
class M2SeriesFactor final : public FactorModel<Complex> {
public:
    explicit M2SeriesFactor(double q, SummationPolicy policy = {}) : q_(q), policy_(policy) {}

    std::string name() const override { return "M2"; }
    Element multiply(const FactorKey& x, const FactorKey& y) const override
    {
        FactorKey k = x;
        k.insert(k.end(), y.begin(), y.end());
        return Element::monomial(k, Complex{1.0, 0.0});
    }
    Complex state(const FactorKey& x) const override { return m2_state(q_, m2_series(x), policy_).value; }
    Element adjoint(const FactorKey& x) const override
    {
        FactorKey k;
        for (auto it = x.rbegin(); it != x.rend(); ++it)
            k.push_back((*it + 4) % 8);
        return Element::monomial(k, Complex{1.0, 0.0});
    }
    std::string format(const FactorKey& x) const override
    {
        std::string s;
        for (long c : x)
            s += (s.empty() ? "" : " ") + m2_letter_name(c);
        return s;
    }

    Element element(SUq2Gen x, bool adjoint = false) const
    {
        return Element::monomial({static_cast<long>(x) + (adjoint ? 4 : 0)}, Complex{1.0, 0.0});
    }

private:
    double q_;
    SummationPolicy policy_;
};

/// (M1, tau) * (M2, omega (x) tau) with M1 = L(Z) generated by u.
class M1M2GeneratorSystem {
public:
    using Word = FreeLetterWord<Complex>;

    explicit M1M2GeneratorSystem(double q, SummationPolicy policy = {})
        : m1_(std::make_shared<ShiftFactor<FloatField>>(FloatField(q), "M1")),
          m2_(std::make_shared<M2SeriesFactor>(q, policy)),
          space_({m1_, m2_}, q)
    {
    }

    FreeProduct<Complex>& space() noexcept { return space_; }

    Word u(long n = 1) const { return {space_.letter(0, m1_->element(n))}; }
    Word v(SUq2Gen x, bool adjoint = false) const { return {space_.letter(1, m2_->element(x, adjoint))}; }

    /// S x -> u . (T* x);  (S x)* -> (T* x)* . u*
    Word factorize(const std::vector<GGen>& w) const
    {
        if (w.empty())
            throw std::invalid_argument("factorize needs a nonempty word");
        Word r;
        for (const auto& g : w)
            r = r * (g.adjoint ? v(g.x, true) * u(-1) : u() * v(g.x));
        return r;
    }

    Complex moment(const std::vector<GGen>& w) { return space_.moment(factorize(w)); }

private:
    std::shared_ptr<ShiftFactor<FloatField>> m1_;
    std::shared_ptr<M2SeriesFactor> m2_;
    FreeProduct<Complex> space_;
};

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

template <CoefficientField F>
struct Lemma23Value {
    typename F::value_type lhs, rhs;
    bool equal = false;
};

/// (omega (x) tau)(f(i,j)(1 (x) S^2)^n) by tensor reduction against the
/// closed formula [i == j][n == 0] (1 - q^2) q^{2i}.
template <CoefficientField F>
Lemma23Value<F> lemma23_state_identity(const F& field, std::size_t i, std::size_t j, long n)
{
    using Scalar = typename F::value_type;
    // f(i,j) = e(i,i) e(i,j) (x) S^{i-j}, reduced through the tensor product
    const auto f = NCPoly<TensorMono, Scalar>::monomial(
        TensorMono::e(i, j, static_cast<long>(i) - static_cast<long>(j)), field.constant(1));
    const auto s2n = NCPoly<TensorMono, Scalar>::monomial(TensorMono::shift(2 * n), field.constant(1));
    const Scalar lhs = omega_tensor_tau(field, multiply(f, s2n));
    const Scalar rhs = (i == j && n == 0) ? omega(field, MatrixMono::e(i, i)) : field.constant(0);
    return {lhs, rhs, agrees(lhs, rhs, 0.0)};
}

template <CoefficientField F>
CheckReport check_lemma23(const F& field, std::size_t max_ij = 8, long max_n = 4, std::size_t max_rel = 12)
{
    using Scalar = typename F::value_type;
    using P = NCPoly<TensorMono, Scalar>;
    CheckReport report{"lemma23", {}, std::nullopt};
    const double q = field.q();
    const double tol = F::exact ? 0.0 : 1e-14;
    const auto fpoly = [&](std::size_t i, std::size_t j, long p = 0) {
        return P::monomial(f_to_tensor({i, j, p}), field.constant(1));
    };

    for (std::size_t i = 0; i <= max_ij; ++i)
        for (std::size_t j = 0; j <= max_ij; ++j)
            for (long n = -max_n; n <= max_n; ++n) {
                const auto v = lemma23_state_identity(field, i, j, n);
                report.records.push_back(compare("state identity", v.lhs, v.rhs, tol, q,
                                                 {{"i", i}, {"j", j}, {"n", n}}));
            }

    // matrix-unit relations and centrality of 1 (x) S^2, reduced exactly
    std::size_t checked = 0, bad = 0;
    nlohmann::json first_bad;
    const P s2 = P::monomial(TensorMono::shift(2), field.constant(1));
    for (std::size_t i = 0; i <= max_rel; ++i)
        for (std::size_t j = 0; j <= max_rel; ++j) {
            const P fij = fpoly(i, j);
            auto fail = [&](const char* what, std::size_t k, std::size_t l) {
                if (bad++ == 0)
                    first_bad = {{"relation", what}, {"i", i}, {"j", j}, {"k", k}, {"l", l}};
            };
            ++checked;
            if (!(adjoint(fij) == fpoly(j, i)))
                fail("f(i,j)* = f(j,i)", 0, 0);
            if (!(multiply(fij, s2) == multiply(s2, fij)))
                fail("[f(i,j), 1(x)S^2] = 0", 0, 0);
            for (std::size_t k = 0; k <= max_rel; ++k)
                for (std::size_t l = 0; l <= max_rel; ++l) {
                    ++checked;
                    const P lhs = multiply(fij, fpoly(k, l));
                    const P rhs = j == k ? fpoly(i, l) : P{};
                    if (!(lhs == rhs))
                        fail("f(i,j)f(k,l) = [j=k] f(i,l)", k, l);
                }
        }
    CheckRecord rel = bound("f matrix-unit relations and centrality", static_cast<double>(bad), 0.0,
                            {{"max_index", max_rel}, {"identities", checked}});
    if (bad)
        rel.inputs["first_failure"] = first_bad;
    report.records.push_back(std::move(rel));
    return report;
}

template <CoefficientField F>
struct CornerValue {
    typename F::value_type phi;      ///< phi(e(0,0) (x) 1)
    typename F::value_type phi0;     ///< phi / (1 - q^2)
};

/// phi of the corner unit e(0,0) (x) 1 as a single M2 letter, and the corner
/// state phi0 = phi / (1 - q^2) on it.
template <CoefficientField F>
CornerValue<F> corner_state_normalization(const F& field)
{
    using Scalar = typename F::value_type;
    auto m1 = std::make_shared<ShiftFactor<F>>(field, "M1");
    auto m2 = std::make_shared<TensorFactor<F>>(field, "M2");
    FreeProduct<Scalar> fp({m1, m2}, field.q());
    const auto corner = NCPoly<TensorMono, Scalar>::monomial(TensorMono::e(0, 0, 0), field.constant(1));
    const Scalar phi = fp.moment(FreeLetterWord<Scalar>{fp.letter(1, m2->element(corner))});
    return {phi, phi / (field.constant(1) - field.q_pow(2))};
}

template <CoefficientField F>
CheckReport check_corner(const F& field)
{
    CheckReport report{"corner", {}, std::nullopt};
    const auto v = corner_state_normalization(field);
    const double tol = F::exact ? 0.0 : 1e-14;
    report.records.push_back(
        compare("phi(e(0,0)(x)1) = 1 - q^2", v.phi, field.constant(1) - field.q_pow(2), tol, field.q()));
    report.records.push_back(compare("phi0(corner unit) = 1", v.phi0, field.constant(1), tol, field.q()));
    return report;
}

/// |Sb| = |b|: (Sb)*(Sb) and b*b have the same normal form in the ambient
/// free product.
template <CoefficientField F>
CheckRecord check_sb_modulus(const F& field)
{
    GGeneratorSystem<F> g(field);
    const auto sb = g.generator({SUq2Gen::b, false});
    const auto [c1, w1] = g.space().normalize(g.space().adjoint(sb) * sb);
    const auto [c2, w2] = g.space().normalize(g.H({HGen::b_star, HGen::b}));
    CheckRecord r;
    r.name = "|Sb| = |b| (normal form of (Sb)*(Sb) equals b*b)";
    r.inputs = {{"lhs", g.space().format(w1)}, {"rhs", g.space().format(w2)}};
    r.pass = w1 == w2 && agrees(c1, c2, 0.0);
    r.residual = r.pass ? 0.0 : 1.0;
    r.outcome = r.pass ? "pass" : "fail";
    r.lhs = numeric(c1, field.q());
    r.rhs = numeric(c2, field.q());
    return r;
}

struct TheoremOptions {
    std::size_t words = 100;
    std::size_t max_len = 5;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    double balanced_fraction = 0.5;  ///< share of words drawn as v v*
};

/// Direct moments in (L(Z), tau) * (L^inf(H), psi) against the factorized
/// words in (M1, tau) * (M2, omega (x) tau).
inline CheckReport check_theorem(double q, const TheoremOptions& opt = {})
{
    CheckReport report{"theorem", {}, opt.seed};
    GGeneratorSystem<FloatField> direct{FloatField(q)};
    SummationPolicy policy;
    policy.tolerance = opt.tolerance * 1e-3;
    M1M2GeneratorSystem factored(q, policy);
    std::mt19937_64 rng(opt.seed);
    std::bernoulli_distribution balanced(opt.balanced_fraction);
    for (std::size_t t = 0; t < opt.words; ++t) {
        const auto w = random_g_word(rng, opt.max_len, balanced(rng));
        std::string label;
        for (const auto& g : w)
            label += (label.empty() ? "" : " ") + to_string(g);
        const nlohmann::json in = {{"word", label}, {"q", q}};
        try {
            report.records.push_back(
                compare("direct = factorized", direct.moment(w), factored.moment(w), opt.tolerance, q, in));
        } catch (const precision_error& e) {
            report.records.push_back(precision_failure("direct = factorized", e.what(), opt.tolerance, in));
        }
    }
    return report;
}

/// Alternating centered moments of powers of u against M2 generator
/// monomials, inside the ambient free product.
inline CheckReport check_m1_m2_freeness(double q, const FreenessOptions& opt = {})
{
    GGeneratorSystem<FloatField> g{FloatField(q)};
    using E = FreeElement<Complex>;
    std::vector<E> f1;
    for (long n : {1L, -1L, 2L, -2L})
        f1.emplace_back(power(g.space(), g.u(), n));
    std::vector<E> f2;
    const std::vector<SUq2Gen> gens = {SUq2Gen::a, SUq2Gen::a_star, SUq2Gen::b, SUq2Gen::b_star};
    for (SUq2Gen x : gens) {
        f2.emplace_back(g.m2_generator(x));
        f2.emplace_back(g.space().adjoint(g.m2_generator(x)));
    }
    // degree-two monomials
    for (SUq2Gen x : gens)
        for (SUq2Gen y : {SUq2Gen::a, SUq2Gen::b})
            f2.emplace_back(g.m2_generator(x) * g.m2_generator(y));
    auto report = check_freeness(g.space(), f1, f2, opt);
    report.name = "freeness";
    return report;
}

}  // namespace awf
