#pragma once
//
// Moments in a free product of W*-probability spaces.
//
// A FreeLetterWord is a product x_1 x_2 ... x_k of letters, each an element of
// one declared factor.  After merging adjacent letters from the same factor
// the word alternates, and the free-product state is computed by the
// centering recursion
//
//   phi(... x_i ...) = phi(x_i) phi(... [x_i removed] ...) + phi(... x_i° ...)
//
// with x° = x - phi(x) 1, applied to the first uncentered letter.  A word of
// alternating centered letters has state 0 by freeness.  Centering is a flag
// on the letter, so that rule is exact in floating mode too.
//

#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "awf/check.hpp"
#include "awf/ncpoly.hpp"
#include "awf/qalg.hpp"
#include "awf/scalar.hpp"
#include "awf/states.hpp"

namespace awf {

/// Letter references an undeclared factor, or similar structural misuse.
class structure_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Monomial key inside a factor; the empty key is the unit of every factor.
using FactorKey = std::vector<long>;

template <class Scalar>
using FactorElement = NCPoly<FactorKey, Scalar>;

/// One free factor: an algebra with a normal-form product and a unital state.
template <class Scalar>
class FactorModel {
public:
    using Element = FactorElement<Scalar>;

    virtual ~FactorModel() = default;

    virtual std::string name() const = 0;
    virtual Element multiply(const FactorKey& x, const FactorKey& y) const = 0;
    virtual Scalar state(const FactorKey& x) const = 0;
    virtual Element adjoint(const FactorKey& x) const = 0;
    virtual std::string format(const FactorKey& x) const = 0;

    Element multiply(const Element& x, const Element& y) const
    {
        Element out;
        for (const auto& [kx, cx] : x)
            for (const auto& [ky, cy] : y) {
                const Scalar c = cx * cy;
                if (kx.empty())
                    out.add_term(ky, c);
                else if (ky.empty())
                    out.add_term(kx, c);
                else
                    out += c * multiply(kx, ky);
            }
        return out;
    }

    Scalar state(const Element& x) const
    {
        Scalar acc = Scalar(0);
        for (const auto& [k, c] : x)
            acc = acc + c * (k.empty() ? Scalar(1) : state(k));
        return acc;
    }

    Element adjoint(const Element& x) const
    {
        Element out;
        for (const auto& [k, c] : x) {
            if (k.empty())
                out.add_term(k, conj_of(c));
            else
                out += conj_of(c) * adjoint(k);
        }
        return out;
    }

    std::string format(const Element& x) const
    {
        if (x.empty())
            return "0";
        std::string out;
        for (const auto& [k, c] : x) {
            if (!out.empty())
                out += " + ";
            out += "(" + to_string(c) + ")" + (k.empty() ? std::string("1") : format(k));
        }
        return out;
    }
};

// ---------------------------------------------------------------------------
// concrete factors
// ---------------------------------------------------------------------------

/// (L(Z), tau); key {n} encodes S^n.
template <CoefficientField F>
class ShiftFactor final : public FactorModel<typename F::value_type> {
public:
    using Scalar = typename F::value_type;
    using Element = FactorElement<Scalar>;

    explicit ShiftFactor(F field, std::string name = "L(Z)") : field_(field), name_(std::move(name)) {}

    static FactorKey encode(long n) { return n == 0 ? FactorKey{} : FactorKey{n}; }
    static long decode(const FactorKey& k) { return k.empty() ? 0 : k.at(0); }

    std::string name() const override { return name_; }
    Element multiply(const FactorKey& x, const FactorKey& y) const override
    {
        return Element::monomial(encode(decode(x) + decode(y)), field_.constant(1));
    }
    Scalar state(const FactorKey& x) const override { return tau(field_, decode(x)); }
    Element adjoint(const FactorKey& x) const override
    {
        return Element::monomial(encode(-decode(x)), field_.constant(1));
    }
    std::string format(const FactorKey& x) const override { return "S^" + std::to_string(decode(x)); }

    Element element(long n) const { return Element::monomial(encode(n), field_.constant(1)); }

private:
    F field_;
    std::string name_;
};

/// (L^inf(SU_q(2)) extended by T = 1 (x) S, psi); key {dagger, k, m, n, t}.
/// Without T this is (L^inf(H), psi) on the SU_q(2) normal basis.
template <CoefficientField F>
class HaarFactor final : public FactorModel<typename F::value_type> {
public:
    using Scalar = typename F::value_type;
    using Element = FactorElement<Scalar>;

    explicit HaarFactor(F field, std::string name = "Linf(H)") : field_(field), name_(std::move(name)) {}

    static FactorKey encode(const HMonomial& h)
    {
        if (h.base.is_unit() && h.t == 0)
            return {};
        return {h.base.dagger ? 1L : 0L, h.base.k, h.base.m, h.base.n, h.t};
    }
    static HMonomial decode(const FactorKey& key)
    {
        if (key.empty())
            return {};
        return {SUq2Monomial::make(key.at(0) != 0, static_cast<unsigned>(key.at(1)),
                                   static_cast<unsigned>(key.at(2)), static_cast<unsigned>(key.at(3))),
                key.at(4)};
    }

    std::string name() const override { return name_; }
    Element multiply(const FactorKey& x, const FactorKey& y) const override
    {
        return from_h(awf::multiply(field_, decode(x), decode(y)));
    }
    Scalar state(const FactorKey& x) const override { return psi_closed_form(field_, decode(x)); }
    Element adjoint(const FactorKey& x) const override { return from_h(awf::adjoint(field_, decode(x))); }
    std::string format(const FactorKey& x) const override { return to_string(decode(x)); }

    /// Normal form of a generator word in a, a*, b, b*, T, T*.
    Element element(std::span<const HGen> word) const
    {
        HPoly<Scalar> acc = HPoly<Scalar>::monomial(HMonomial{}, field_.constant(1));
        for (HGen g : word) {
            HMonomial gm;
            switch (g) {
            case HGen::t: gm.t = 1; break;
            case HGen::t_star: gm.t = -1; break;
            default: {
                const SUq2Gen s = static_cast<SUq2Gen>(static_cast<int>(g));
                gm.base = SUq2Monomial::make(s == SUq2Gen::a_star, (s == SUq2Gen::a || s == SUq2Gen::a_star) ? 1 : 0,
                                             s == SUq2Gen::b ? 1 : 0, s == SUq2Gen::b_star ? 1 : 0);
            }
            }
            HPoly<Scalar> next;
            for (const auto& [h, c] : acc)
                next += c * awf::multiply(field_, h, gm);
            acc = std::move(next);
        }
        return from_h(acc);
    }
    Element element(std::initializer_list<HGen> word) const
    {
        return element(std::span<const HGen>(word.begin(), word.size()));
    }
    Element element(const SUq2Poly<Scalar>& p) const
    {
        Element out;
        for (const auto& [m, c] : p)
            out.add_term(encode(HMonomial{m, 0}), c);
        return out;
    }

private:
    Element from_h(const HPoly<Scalar>& p) const
    {
        Element out;
        for (const auto& [h, c] : p)
            out.add_term(encode(h), c);
        return out;
    }

    F field_;
    std::string name_;
};

/// (B(l2 N), omega); key {i, j}.
template <CoefficientField F>
class MatrixUnitFactor final : public FactorModel<typename F::value_type> {
public:
    using Scalar = typename F::value_type;
    using Element = FactorElement<Scalar>;

    explicit MatrixUnitFactor(F field, std::string name = "B(l2N)") : field_(field), name_(std::move(name)) {}

    static FactorKey encode(const MatrixMono& m)
    {
        if (m.identity)
            return {};
        return {static_cast<long>(m.i), static_cast<long>(m.j)};
    }
    static MatrixMono decode(const FactorKey& k)
    {
        if (k.empty())
            return MatrixMono::unit();
        return MatrixMono::e(static_cast<std::size_t>(k.at(0)), static_cast<std::size_t>(k.at(1)));
    }

    std::string name() const override { return name_; }
    Element multiply(const FactorKey& x, const FactorKey& y) const override
    {
        Element out;
        if (auto m = awf::multiply(decode(x), decode(y)))
            out.add_term(encode(*m), field_.constant(1));
        return out;
    }
    Scalar state(const FactorKey& x) const override { return omega(field_, decode(x)); }
    Element adjoint(const FactorKey& x) const override
    {
        const auto m = decode(x);
        return Element::monomial(encode(m.identity ? m : MatrixMono::e(m.j, m.i)), field_.constant(1));
    }
    std::string format(const FactorKey& x) const override { return to_string(decode(x)); }

private:
    F field_;
    std::string name_;
};

/// (B(l2 N) (x) L(Z), omega (x) tau); key {has_e, i, j, n}.
template <CoefficientField F>
class TensorFactor final : public FactorModel<typename F::value_type> {
public:
    using Scalar = typename F::value_type;
    using Element = FactorElement<Scalar>;

    explicit TensorFactor(F field, std::string name = "B(l2N)(x)L(Z)") : field_(field), name_(std::move(name)) {}

    static FactorKey encode(const TensorMono& m)
    {
        if (m.identity_leg && m.n == 0)
            return {};
        return {m.identity_leg ? 0L : 1L, static_cast<long>(m.i), static_cast<long>(m.j), m.n};
    }
    static TensorMono decode(const FactorKey& k)
    {
        if (k.empty())
            return TensorMono::unit();
        if (k.at(0) == 0)
            return TensorMono::shift(k.at(3));
        return TensorMono::e(static_cast<std::size_t>(k.at(1)), static_cast<std::size_t>(k.at(2)), k.at(3));
    }

    std::string name() const override { return name_; }
    Element multiply(const FactorKey& x, const FactorKey& y) const override
    {
        Element out;
        if (auto m = awf::multiply(decode(x), decode(y)))
            out.add_term(encode(*m), field_.constant(1));
        return out;
    }
    Scalar state(const FactorKey& x) const override { return omega_tensor_tau(field_, decode(x)); }
    Element adjoint(const FactorKey& x) const override
    {
        return Element::monomial(encode(awf::adjoint(decode(x))), field_.constant(1));
    }
    std::string format(const FactorKey& x) const override { return to_string(decode(x)); }

    Element element(const NCPoly<TensorMono, Scalar>& p) const
    {
        Element out;
        for (const auto& [m, c] : p)
            out.add_term(encode(m), c);
        return out;
    }

private:
    F field_;
    std::string name_;
};

// ---------------------------------------------------------------------------
// words and the evaluator
// ---------------------------------------------------------------------------

template <class Scalar>
struct Letter {
    std::size_t factor = 0;
    FactorElement<Scalar> element;
    /// Set when the element is known to have state 0 (x - phi(x) 1).
    bool centered = false;

    friend bool operator==(const Letter&, const Letter&) = default;
};

/// Product of letters; the empty word is the unit.
template <class Scalar>
struct FreeLetterWord {
    std::vector<Letter<Scalar>> letters;

    FreeLetterWord() = default;
    explicit FreeLetterWord(std::vector<Letter<Scalar>> l) : letters(std::move(l)) {}
    FreeLetterWord(std::initializer_list<Letter<Scalar>> l) : letters(l) {}

    std::size_t size() const noexcept { return letters.size(); }
    bool empty() const noexcept { return letters.empty(); }

    friend FreeLetterWord operator*(FreeLetterWord a, const FreeLetterWord& b)
    {
        a.letters.insert(a.letters.end(), b.letters.begin(), b.letters.end());
        return a;
    }
    friend bool operator==(const FreeLetterWord&, const FreeLetterWord&) = default;
};

/// Finite linear combination of free words.
template <class Scalar>
struct FreeElement {
    std::vector<std::pair<Scalar, FreeLetterWord<Scalar>>> terms;

    FreeElement() = default;
    FreeElement(FreeLetterWord<Scalar> w)  // NOLINT(implicit)
    {
        terms.emplace_back(Scalar(1), std::move(w));
    }

    static FreeElement unit() { return FreeElement(FreeLetterWord<Scalar>{}); }

    friend FreeElement operator*(const FreeElement& x, const FreeElement& y)
    {
        FreeElement r;
        for (const auto& [cx, wx] : x.terms)
            for (const auto& [cy, wy] : y.terms)
                r.terms.emplace_back(cx * cy, wx * wy);
        return r;
    }
    friend FreeElement operator+(FreeElement x, const FreeElement& y)
    {
        x.terms.insert(x.terms.end(), y.terms.begin(), y.terms.end());
        return x;
    }
    friend FreeElement operator*(const Scalar& s, FreeElement x)
    {
        for (auto& t : x.terms)
            t.first = s * t.first;
        return x;
    }
};

namespace detail {

inline void append_scalar(std::string& out, const Complex& c)
{
    const auto re = std::bit_cast<std::uint64_t>(c.real());
    const auto im = std::bit_cast<std::uint64_t>(c.imag());
    out.append(reinterpret_cast<const char*>(&re), sizeof re);
    out.append(reinterpret_cast<const char*>(&im), sizeof im);
}

inline void append_scalar(std::string& out, const QFunction& c)
{
    out += c.str();
    out += '\x1f';
}

}  // namespace detail

/// Evaluator for the free product of the given factors.  Holds a memo table,
/// so one instance must not be shared between threads.
template <class Scalar>
class FreeProduct {
public:
    using Factor = FactorModel<Scalar>;
    using Word = FreeLetterWord<Scalar>;

    explicit FreeProduct(std::vector<std::shared_ptr<const Factor>> factors, double display_q = 0.5)
        : factors_(std::move(factors)), display_q_(display_q)
    {
    }

    std::size_t factor_count() const noexcept { return factors_.size(); }
    const Factor& factor(std::size_t i) const
    {
        if (i >= factors_.size())
            throw structure_error("letter references unknown factor " + std::to_string(i + 1) + " (" +
                                  std::to_string(factors_.size()) + " declared)");
        return *factors_[i];
    }
    double display_q() const noexcept { return display_q_; }

    Letter<Scalar> letter(std::size_t factor_index, FactorElement<Scalar> element) const
    {
        factor(factor_index);
        return {factor_index, std::move(element), false};
    }

    /// Merges adjacent same-factor letters and pulls scalar letters out.
    /// Returns (coefficient, alternating word without scalar letters).
    std::pair<Scalar, Word> normalize(const Word& w) const
    {
        Scalar coeff = Scalar(1);
        Word out;
        for (const auto& l : w.letters) {
            factor(l.factor);
            if (l.element.empty())
                return {Scalar(0), {}};
            out.letters.push_back(l);
            for (;;) {
                auto& ls = out.letters;
                if (ls.size() >= 2 && ls[ls.size() - 1].factor == ls[ls.size() - 2].factor) {
                    const auto& f = factor(ls.back().factor);
                    auto merged = f.multiply(ls[ls.size() - 2].element, ls.back().element);
                    ls.pop_back();
                    ls.back().element = std::move(merged);
                    ls.back().centered = false;
                    if (ls.back().element.empty())
                        return {Scalar(0), {}};
                    continue;
                }
                if (!ls.empty() && is_scalar(ls.back().element)) {
                    if (ls.back().centered)
                        return {Scalar(0), {}};
                    coeff = coeff * ls.back().element.begin()->second;
                    ls.pop_back();
                    continue;
                }
                break;
            }
        }
        return {coeff, std::move(out)};
    }

    /// Free-product state of a word.
    Scalar moment(const Word& w)
    {
        auto [c, nw] = normalize(w);
        if (is_zero(c))
            return Scalar(0);
        return c * moment_normalized(nw);
    }

    Scalar moment(const FreeElement<Scalar>& x)
    {
        Scalar acc = Scalar(0);
        for (const auto& [c, w] : x.terms)
            acc = acc + c * moment(w);
        return acc;
    }

    Word adjoint(const Word& w) const
    {
        Word r;
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
            r.letters.push_back({it->factor, factor(it->factor).adjoint(it->element), it->centered});
        return r;
    }

    FreeElement<Scalar> adjoint(const FreeElement<Scalar>& x) const
    {
        FreeElement<Scalar> r;
        for (const auto& [c, w] : x.terms)
            r.terms.emplace_back(conj_of(c), adjoint(w));
        return r;
    }

    /// x - phi(x) 1
    FreeElement<Scalar> centered(const FreeElement<Scalar>& x)
    {
        const Scalar m = moment(x);
        if (is_zero(m))
            return x;
        return x + (-m) * FreeElement<Scalar>::unit();
    }

    std::string format(const Word& w) const
    {
        if (w.empty())
            return "1";
        std::string out;
        for (const auto& l : w.letters) {
            if (!out.empty())
                out += " . ";
            out += "F" + std::to_string(l.factor + 1) + ":[" + factor(l.factor).format(l.element) + "]";
            if (l.centered)
                out += "°";
        }
        return out;
    }

    std::size_t memo_size() const noexcept { return memo_.size(); }
    void clear_memo() { memo_.clear(); }

private:
    static bool is_scalar(const FactorElement<Scalar>& e)
    {
        return e.size() == 1 && e.begin()->first.empty();
    }

    std::string memo_key(const Word& w) const
    {
        std::string key;
        for (const auto& l : w.letters) {
            key += static_cast<char>('A' + l.factor);
            key += l.centered ? '1' : '0';
            for (const auto& [k, c] : l.element) {
                key += '(';
                for (long v : k) {
                    key += std::to_string(v);
                    key += ',';
                }
                key += ')';
                detail::append_scalar(key, c);
            }
            key += '|';
        }
        return key;
    }

    Scalar moment_normalized(const Word& w)
    {
        if (w.empty())
            return Scalar(1);
        if (w.size() == 1) {
            const auto& l = w.letters.front();
            return l.centered ? Scalar(0) : factor(l.factor).state(l.element);
        }
        const std::string key = memo_key(w);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;

        Scalar result = Scalar(0);
        std::size_t i = 0;
        while (i < w.size() && w.letters[i].centered)
            ++i;
        if (i < w.size()) {
            const auto& l = w.letters[i];
            const Scalar phi = factor(l.factor).state(l.element);
            Word centered_word = w;
            auto& cl = centered_word.letters[i];
            cl.centered = true;
            if (!is_zero(phi)) {
                cl.element.add_term(FactorKey{}, -phi);
                Word removed = w;
                removed.letters.erase(removed.letters.begin() + static_cast<long>(i));
                result = phi * moment(removed);
            }
            if (!cl.element.empty())
                result = result + moment_normalized(centered_word);
        }
        memo_.emplace(key, result);
        return result;
    }

    std::vector<std::shared_ptr<const Factor>> factors_;
    double display_q_;
    std::unordered_map<std::string, Scalar> memo_;
};

// ---------------------------------------------------------------------------
// checks
// ---------------------------------------------------------------------------

/// u^n for n in Z (u* for negative powers).
template <class Scalar>
FreeLetterWord<Scalar> power(const FreeProduct<Scalar>& space, const FreeLetterWord<Scalar>& u, long n)
{
    const auto base = n >= 0 ? u : space.adjoint(u);
    FreeLetterWord<Scalar> r;
    for (long i = 0; i < (n >= 0 ? n : -n); ++i)
        r = r * base;
    return r;
}

/// L2(phi) size of x - 1, computed as sqrt|phi((x-1)*(x-1))|.
template <class Scalar>
double distance_from_unit(FreeProduct<Scalar>& space, const FreeLetterWord<Scalar>& x)
{
    const FreeElement<Scalar> d = FreeElement<Scalar>(x) + Scalar(-1) * FreeElement<Scalar>::unit();
    return std::sqrt(std::abs(numeric(space.moment(space.adjoint(d) * d), space.display_q())));
}

/// True when the normal form of w is exactly the unit.
template <class Scalar>
bool reduces_to_unit(const FreeProduct<Scalar>& space, const FreeLetterWord<Scalar>& w)
{
    const auto [c, nw] = space.normalize(w);
    return nw.empty() && agrees(c, Scalar(1), 0.0);
}

/// Haar unitarity: u*u = uu* = 1 and phi(u^n) = 0 for 1 <= |n| <= max_n.
template <class Scalar>
CheckReport check_haar_unitary(FreeProduct<Scalar>& space, const FreeLetterWord<Scalar>& u, long max_n,
                               double tol = default_tolerance)
{
    CheckReport report{"haar-unitary", {}, std::nullopt};
    const std::string label = space.format(u);
    bool unitary = true;
    for (const auto& [name, prod] : {std::pair{"u*u", space.adjoint(u) * u}, std::pair{"uu*", u * space.adjoint(u)}}) {
        const bool exact_unit = reduces_to_unit(space, prod);
        const double residual = exact_unit ? 0.0 : distance_from_unit(space, prod);
        auto rec = bound(std::string("unitarity ") + name, residual, 0.0, {{"u", label}});
        rec.pass = exact_unit;
        rec.outcome = exact_unit ? "pass" : "fail";
        unitary = unitary && exact_unit;
        report.records.push_back(std::move(rec));
    }
    if (!unitary)
        return report;
    for (long n = -max_n; n <= max_n; ++n) {
        if (n == 0)
            continue;
        const Scalar m = space.moment(power(space, u, n));
        report.records.push_back(compare("phi(u^" + std::to_string(n) + ")", m, Scalar(0), tol, space.display_q(),
                                         {{"u", label}, {"n", n}}));
    }
    return report;
}

struct FreenessOptions {
    std::size_t max_len = 6;
    std::size_t budget = 10000;  ///< exhaustive up to this many tuples
    std::uint64_t seed = 42;
    double tolerance = default_tolerance;
};

/// All (or a seeded sample of) alternating tuples g_1 g_2 ... g_L with g_i
/// drawn alternately from the two generator families, L <= max_len; checks
/// phi(g_1° g_2° ... g_L°) = 0.  One record per tuple length summarizing the
/// largest residual.
template <class Scalar>
CheckReport check_freeness(FreeProduct<Scalar>& space, const std::vector<FreeElement<Scalar>>& family1,
                           const std::vector<FreeElement<Scalar>>& family2, const FreenessOptions& opt = {})
{
    CheckReport report{"freeness", {}, opt.seed};
    const std::array<const std::vector<FreeElement<Scalar>>*, 2> fam{&family1, &family2};

    std::array<std::vector<FreeElement<Scalar>>, 2> centered;
    for (int f = 0; f < 2; ++f)
        for (const auto& g : *fam[f])
            centered[f].push_back(space.centered(g));

    // census: sum over L and starting family of prod of family sizes
    double census = 0.0;
    for (std::size_t len = 1; len <= opt.max_len; ++len)
        for (int start = 0; start < 2; ++start) {
            double c = 1.0;
            for (std::size_t i = 0; i < len; ++i)
                c *= static_cast<double>(fam[(start + i) % 2]->size());
            census += c;
        }
    const bool exhaustive = census <= static_cast<double>(opt.budget);

    struct LengthStats {
        std::size_t count = 0;
        std::size_t failures = 0;
        std::optional<CheckRecord> representative;  // first failure, else largest residual
    };
    std::map<std::size_t, LengthStats> stats;
    auto run_tuple = [&](int start, const std::vector<std::size_t>& idx) {
        FreeElement<Scalar> prod = FreeElement<Scalar>::unit();
        for (std::size_t i = 0; i < idx.size(); ++i)
            prod = prod * centered[(start + i) % 2][idx[i]];
        const Scalar m = space.moment(prod);
        auto& st = stats[idx.size()];
        ++st.count;
        auto rec = compare("centered alternating moments, length " + std::to_string(idx.size()), m, Scalar(0),
                           opt.tolerance, space.display_q(), {{"start_family", start + 1}, {"indices", idx}});
        if (!rec.pass)
            ++st.failures;
        const auto& cur = st.representative;
        if (!cur || (!rec.pass && cur->pass) || (rec.pass == cur->pass && rec.residual > cur->residual))
            st.representative = std::move(rec);
    };

    if (exhaustive) {
        for (std::size_t len = 1; len <= opt.max_len; ++len)
            for (int start = 0; start < 2; ++start) {
                std::vector<std::size_t> idx(len, 0);
                bool empty_family = false;
                for (std::size_t i = 0; i < len; ++i)
                    empty_family = empty_family || fam[(start + i) % 2]->empty();
                if (empty_family)
                    continue;
                for (;;) {
                    run_tuple(start, idx);
                    std::size_t pos = 0;
                    while (pos < len) {
                        if (++idx[pos] < fam[(start + pos) % 2]->size())
                            break;
                        idx[pos] = 0;
                        ++pos;
                    }
                    if (pos == len)
                        break;
                }
            }
    } else {
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> len_dist(1, opt.max_len);
        std::uniform_int_distribution<int> start_dist(0, 1);
        for (std::size_t s = 0; s < opt.budget; ++s) {
            const std::size_t len = len_dist(rng);
            const int start = start_dist(rng);
            std::vector<std::size_t> idx(len);
            for (std::size_t i = 0; i < len; ++i) {
                std::uniform_int_distribution<std::size_t> d(0, fam[(start + i) % 2]->size() - 1);
                idx[i] = d(rng);
            }
            run_tuple(start, idx);
        }
    }

    for (auto& [len, st] : stats) {
        auto rec = std::move(*st.representative);
        rec.inputs["tuples"] = st.count;
        rec.inputs["failures"] = st.failures;
        rec.inputs["mode"] = exhaustive ? "exhaustive" : "sampled";
        rec.pass = st.failures == 0;
        rec.outcome = rec.pass ? "pass" : "fail";
        report.records.push_back(std::move(rec));
    }
    return report;
}

/// phi(u x u* y) = phi(x) phi(y) for a Haar unitary u free from x, y.
template <class Scalar>
CheckRecord check_conjugation_freeness(FreeProduct<Scalar>& space, const FreeLetterWord<Scalar>& u,
                                       const FreeElement<Scalar>& x, const FreeElement<Scalar>& y,
                                       double tol = default_tolerance)
{
    const FreeElement<Scalar> uu(u);
    const Scalar lhs = space.moment(uu * x * FreeElement<Scalar>(space.adjoint(u)) * y);
    const Scalar rhs = space.moment(x) * space.moment(y);
    return compare("phi(u x u* y) = phi(x) phi(y)", lhs, rhs, tol, space.display_q());
}

}  // namespace awf
