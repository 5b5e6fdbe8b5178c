#pragma once
//
// Generators, words and normal forms for the concrete algebras:
//
//   suq2          C_u(H) = C(SU_q(2)), generators a, a*, b, b*
//   matrix_units  span of the e(i,j) in B(l2(N)) plus the identity
//   shift         group algebra of Z generated by the bilateral shift S
//   tensor        B(l2(N)) (x) L(Z), spanned by e(i,j) (x) S^n and 1 (x) S^n
//
// SU_q(2) rewriting rules (a/a* move left past b/b*, b before b*):
//
//   b a   -> q^-1 a b        b* a   -> q^-1 a b*
//   b a*  -> q    a* b       b* a*  -> q    a* b*
//   b* b  -> b b*
//   a* a  -> 1 - b b*        a a*   -> 1 - q^2 b b*
//
// Normal monomials are a^k b^m b*^n and a*^k b^m b*^n.
//

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "awf/ncpoly.hpp"
#include "awf/scalar.hpp"

namespace awf {

enum class AlgebraTag : std::uint8_t { suq2, matrix_units, shift, tensor };

inline std::string to_string(AlgebraTag t)
{
    switch (t) {
    case AlgebraTag::suq2: return "SUq2";
    case AlgebraTag::matrix_units: return "MatrixUnits";
    case AlgebraTag::shift: return "Shift";
    case AlgebraTag::tensor: return "TensorBL";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// symbols
// ---------------------------------------------------------------------------

enum class SUq2Gen : std::uint8_t { a, a_star, b, b_star };

constexpr SUq2Gen star(SUq2Gen g) noexcept
{
    switch (g) {
    case SUq2Gen::a: return SUq2Gen::a_star;
    case SUq2Gen::a_star: return SUq2Gen::a;
    case SUq2Gen::b: return SUq2Gen::b_star;
    case SUq2Gen::b_star: return SUq2Gen::b;
    }
    return g;
}

struct MatrixUnit {
    std::size_t i = 0, j = 0;
    friend auto operator<=>(const MatrixUnit&, const MatrixUnit&) = default;
};

/// S when !inverse, S* = S^-1 otherwise.
struct ShiftGen {
    bool inverse = false;
    friend auto operator<=>(const ShiftGen&, const ShiftGen&) = default;
};

/// e(i,j) (x) S^n
struct TensorUnit {
    std::size_t i = 0, j = 0;
    long n = 0;
    friend auto operator<=>(const TensorUnit&, const TensorUnit&) = default;
};

using Symbol = std::variant<SUq2Gen, MatrixUnit, ShiftGen, TensorUnit>;

inline AlgebraTag tag_of(const Symbol& s)
{
    return static_cast<AlgebraTag>(s.index());
}

inline Symbol star(const Symbol& s)
{
    return std::visit(
        [](const auto& v) -> Symbol {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SUq2Gen>)
                return star(v);
            else if constexpr (std::is_same_v<T, MatrixUnit>)
                return MatrixUnit{v.j, v.i};
            else if constexpr (std::is_same_v<T, ShiftGen>)
                return ShiftGen{!v.inverse};
            else
                return TensorUnit{v.j, v.i, -v.n};
        },
        s);
}

inline std::string to_string(const Symbol& s)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SUq2Gen>) {
                static constexpr const char* names[] = {"a", "a*", "b", "b*"};
                return names[static_cast<int>(v)];
            } else if constexpr (std::is_same_v<T, MatrixUnit>) {
                return "e(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")";
            } else if constexpr (std::is_same_v<T, ShiftGen>) {
                return v.inverse ? "S*" : "S";
            } else {
                return "t(" + std::to_string(v.i) + "," + std::to_string(v.j) + ";" + std::to_string(v.n) + ")";
            }
        },
        s);
}

class algebra_mismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite product of generators of a single algebra.  The empty word is the
/// unit and carries no tag.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Symbol> symbols)
    {
        for (auto& s : symbols)
            push_back(std::move(s));
    }
    Word(std::initializer_list<Symbol> symbols) : Word(std::vector<Symbol>(symbols)) {}

    void push_back(Symbol s)
    {
        const AlgebraTag t = tag_of(s);
        if (tag_ && *tag_ != t)
            throw algebra_mismatch("cannot mix " + to_string(*tag_) + " and " + to_string(t) +
                                   " generators in one word");
        tag_ = t;
        symbols_.push_back(std::move(s));
    }

    std::optional<AlgebraTag> tag() const noexcept { return tag_; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }

    friend Word operator*(Word a, const Word& b)
    {
        for (const auto& s : b.symbols_)
            a.push_back(s);
        return a;
    }
    friend bool operator==(const Word&, const Word&) = default;

    /// Generator sequence of an SU_q(2) word.
    std::vector<SUq2Gen> suq2_generators() const
    {
        require(AlgebraTag::suq2);
        std::vector<SUq2Gen> g;
        g.reserve(symbols_.size());
        for (const auto& s : symbols_)
            g.push_back(std::get<SUq2Gen>(s));
        return g;
    }

    void require(AlgebraTag t) const
    {
        if (tag_ && *tag_ != t)
            throw algebra_mismatch("expected a " + to_string(t) + " word, got " + to_string(*tag_));
    }

private:
    std::optional<AlgebraTag> tag_;
    std::vector<Symbol> symbols_;
};

/// Canonical text form: tokens separated by single spaces, "1" for the unit.
inline std::string to_string(const Word& w)
{
    if (w.empty())
        return "1";
    std::string out;
    for (const auto& s : w.symbols()) {
        if (!out.empty())
            out += ' ';
        out += to_string(s);
    }
    return out;
}

inline Word adjoint(const Word& w)
{
    Word r;
    for (auto it = w.symbols().rbegin(); it != w.symbols().rend(); ++it)
        r.push_back(star(*it));
    return r;
}

// ---------------------------------------------------------------------------
// SU_q(2)
// ---------------------------------------------------------------------------

/// a^k b^m b*^n (dagger = false) or a*^k b^m b*^n (dagger = true).
/// Ordered lexicographically on (dagger, k, m, n).
struct SUq2Monomial {
    bool dagger = false;
    unsigned k = 0, m = 0, n = 0;

    static constexpr SUq2Monomial make(bool dagger, unsigned k, unsigned m, unsigned n)
    {
        return {k == 0 ? false : dagger, k, m, n};
    }
    static constexpr SUq2Monomial unit() { return {}; }

    unsigned degree() const noexcept { return k + m + n; }
    bool is_unit() const noexcept { return k == 0 && m == 0 && n == 0; }

    std::vector<SUq2Gen> generators() const
    {
        std::vector<SUq2Gen> g(k, dagger ? SUq2Gen::a_star : SUq2Gen::a);
        g.insert(g.end(), m, SUq2Gen::b);
        g.insert(g.end(), n, SUq2Gen::b_star);
        return g;
    }

    friend auto operator<=>(const SUq2Monomial&, const SUq2Monomial&) = default;
};

inline std::string to_string(const SUq2Monomial& mono)
{
    if (mono.is_unit())
        return "1";
    std::string out;
    auto put = [&out](const char* sym, unsigned p) {
        if (p == 0)
            return;
        if (!out.empty())
            out += ' ';
        out += sym;
        if (p > 1)
            out += "^" + std::to_string(p);
    };
    put(mono.dagger ? "a*" : "a", mono.k);
    put("b", mono.m);
    put("b*", mono.n);
    return out;
}

template <class Scalar>
using SUq2Poly = NCPoly<SUq2Monomial, Scalar>;

namespace detail {

template <CoefficientField F>
void right_multiply(const F& field, const SUq2Monomial& x, const typename F::value_type& c, SUq2Gen g,
                    SUq2Poly<typename F::value_type>& out)
{
    const auto [dag, k, m, n] = x;
    switch (g) {
    case SUq2Gen::b_star:
        out.add_term(SUq2Monomial::make(dag, k, m, n + 1), c);
        return;
    case SUq2Gen::b:
        out.add_term(SUq2Monomial::make(dag, k, m + 1, n), c);
        return;
    case SUq2Gen::a: {
        const auto cc = c * field.q_pow(-static_cast<long>(m + n));
        if (!dag || k == 0) {
            out.add_term(SUq2Monomial::make(false, k + 1, m, n), cc);
        } else {
            // a*^k a = a*^(k-1) (1 - b b*)
            out.add_term(SUq2Monomial::make(true, k - 1, m, n), cc);
            out.add_term(SUq2Monomial::make(true, k - 1, m + 1, n + 1), -cc);
        }
        return;
    }
    case SUq2Gen::a_star: {
        const auto cc = c * field.q_pow(static_cast<long>(m + n));
        if (dag || k == 0) {
            out.add_term(SUq2Monomial::make(true, k + 1, m, n), cc);
        } else {
            // a^k a* = a^(k-1) (1 - q^2 b b*)
            out.add_term(SUq2Monomial::make(false, k - 1, m, n), cc);
            out.add_term(SUq2Monomial::make(false, k - 1, m + 1, n + 1), -(cc * field.q_pow(2)));
        }
        return;
    }
    }
}

}  // namespace detail

/// p * g for a single generator g.
template <CoefficientField F>
SUq2Poly<typename F::value_type> multiply(const F& field, const SUq2Poly<typename F::value_type>& p, SUq2Gen g)
{
    SUq2Poly<typename F::value_type> out;
    for (const auto& [mono, c] : p)
        detail::right_multiply(field, mono, c, g, out);
    return out;
}

template <CoefficientField F>
SUq2Poly<typename F::value_type> multiply(const F& field, SUq2Poly<typename F::value_type> p,
                                          std::span<const SUq2Gen> gens)
{
    for (SUq2Gen g : gens)
        p = multiply(field, p, g);
    return p;
}

template <CoefficientField F>
SUq2Poly<typename F::value_type> multiply(const F& field, const SUq2Poly<typename F::value_type>& p,
                                          const SUq2Poly<typename F::value_type>& r)
{
    SUq2Poly<typename F::value_type> out;
    for (const auto& [mono, c] : r)
        out += c * multiply(field, p, std::span<const SUq2Gen>(mono.generators()));
    return out;
}

/// Normal form of a word in a, a*, b, b*.
template <CoefficientField F>
SUq2Poly<typename F::value_type> reduce_suq2(const F& field, std::span<const SUq2Gen> word)
{
    auto one = SUq2Poly<typename F::value_type>::monomial(SUq2Monomial::unit(), field.constant(1));
    return multiply(field, std::move(one), word);
}

template <CoefficientField F>
SUq2Poly<typename F::value_type> reduce_suq2(const F& field, const Word& w)
{
    const auto gens = w.suq2_generators();
    return reduce_suq2(field, std::span<const SUq2Gen>(gens));
}

template <CoefficientField F>
SUq2Poly<typename F::value_type> adjoint(const F& field, const SUq2Poly<typename F::value_type>& p)
{
    SUq2Poly<typename F::value_type> out;
    for (const auto& [mono, c] : p) {
        auto gens = mono.generators();
        std::vector<SUq2Gen> rev;
        rev.reserve(gens.size());
        for (auto it = gens.rbegin(); it != gens.rend(); ++it)
            rev.push_back(star(*it));
        out += conj_of(c) * reduce_suq2(field, std::span<const SUq2Gen>(rev));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SU_q(2) extended by the central unitary T = 1 (x) S of L(Z) inside
// B(l2 N) (x) L(Z).  Monomials a^k b^m b*^n T^t.
// ---------------------------------------------------------------------------

struct HMonomial {
    SUq2Monomial base;
    long t = 0;
    friend auto operator<=>(const HMonomial&, const HMonomial&) = default;
};

inline std::string to_string(const HMonomial& h)
{
    if (h.t == 0)
        return to_string(h.base);
    std::string s = h.base.is_unit() ? std::string{} : to_string(h.base) + " ";
    return s + "T" + (h.t == 1 ? std::string{} : "^" + std::to_string(h.t));
}

template <class Scalar>
using HPoly = NCPoly<HMonomial, Scalar>;

template <CoefficientField F>
HPoly<typename F::value_type> multiply(const F& field, const HMonomial& x, const HMonomial& y)
{
    using S = typename F::value_type;
    const auto gens = y.base.generators();
    const auto prod = multiply(field, SUq2Poly<S>::monomial(x.base, field.constant(1)),
                               std::span<const SUq2Gen>(gens));
    HPoly<S> out;
    for (const auto& [mono, c] : prod)
        out.add_term(HMonomial{mono, x.t + y.t}, c);
    return out;
}

template <CoefficientField F>
HPoly<typename F::value_type> adjoint(const F& field, const HMonomial& x)
{
    using S = typename F::value_type;
    HPoly<S> out;
    for (const auto& [mono, c] : adjoint(field, SUq2Poly<S>::monomial(x.base, field.constant(1))))
        out.add_term(HMonomial{mono, -x.t}, c);
    return out;
}

// ---------------------------------------------------------------------------
// matrix units
// ---------------------------------------------------------------------------

/// e(i,j), or the identity of B(l2 N) when `identity` is set.
struct MatrixMono {
    bool identity = true;
    std::size_t i = 0, j = 0;

    static MatrixMono unit() { return {}; }
    static MatrixMono e(std::size_t i, std::size_t j) { return {false, i, j}; }
    friend auto operator<=>(const MatrixMono&, const MatrixMono&) = default;
};

inline std::string to_string(const MatrixMono& m)
{
    return m.identity ? std::string("1") : "e(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")";
}

/// Product of two matrix-unit monomials; nullopt encodes zero.
inline std::optional<MatrixMono> multiply(const MatrixMono& x, const MatrixMono& y)
{
    if (x.identity)
        return y;
    if (y.identity)
        return x;
    if (x.j != y.i)
        return std::nullopt;
    return MatrixMono::e(x.i, y.j);
}

template <class Scalar>
NCPoly<MatrixMono, Scalar> reduce_matrix_units(const Word& w)
{
    w.require(AlgebraTag::matrix_units);
    std::optional<MatrixMono> acc = MatrixMono::unit();
    for (const auto& s : w.symbols()) {
        const auto& u = std::get<MatrixUnit>(s);
        acc = multiply(*acc, MatrixMono::e(u.i, u.j));
        if (!acc)
            return {};
    }
    return NCPoly<MatrixMono, Scalar>::monomial(*acc, Scalar(1));
}

// ---------------------------------------------------------------------------
// shift
// ---------------------------------------------------------------------------

/// Net power of S in a word of S and S*.
inline long reduce_shift(const Word& w)
{
    w.require(AlgebraTag::shift);
    long n = 0;
    for (const auto& s : w.symbols())
        n += std::get<ShiftGen>(s).inverse ? -1 : 1;
    return n;
}

// ---------------------------------------------------------------------------
// B(l2 N) (x) L(Z)
// ---------------------------------------------------------------------------

/// e(i,j) (x) S^n, or 1 (x) S^n when `identity_leg` is set.
struct TensorMono {
    bool identity_leg = true;
    std::size_t i = 0, j = 0;
    long n = 0;

    static TensorMono unit() { return {}; }
    static TensorMono shift(long n) { return {true, 0, 0, n}; }
    static TensorMono e(std::size_t i, std::size_t j, long n) { return {false, i, j, n}; }
    friend auto operator<=>(const TensorMono&, const TensorMono&) = default;
};

inline std::string to_string(const TensorMono& m)
{
    if (m.identity_leg)
        return m.n == 0 ? "1" : "1(x)S^" + std::to_string(m.n);
    return "e(" + std::to_string(m.i) + "," + std::to_string(m.j) + ")(x)S^" + std::to_string(m.n);
}

inline std::optional<TensorMono> multiply(const TensorMono& x, const TensorMono& y)
{
    const auto left = x.identity_leg ? MatrixMono::unit() : MatrixMono::e(x.i, x.j);
    const auto right = y.identity_leg ? MatrixMono::unit() : MatrixMono::e(y.i, y.j);
    const auto m = multiply(left, right);
    if (!m)
        return std::nullopt;
    return TensorMono{m->identity, m->i, m->j, x.n + y.n};
}

inline TensorMono adjoint(const TensorMono& m)
{
    return {m.identity_leg, m.j, m.i, -m.n};
}

template <class Scalar>
NCPoly<TensorMono, Scalar> multiply(const NCPoly<TensorMono, Scalar>& p, const NCPoly<TensorMono, Scalar>& r)
{
    NCPoly<TensorMono, Scalar> out;
    for (const auto& [x, c] : p)
        for (const auto& [y, d] : r)
            if (auto xy = multiply(x, y))
                out.add_term(*xy, c * d);
    return out;
}

template <class Scalar>
NCPoly<TensorMono, Scalar> adjoint(const NCPoly<TensorMono, Scalar>& p)
{
    NCPoly<TensorMono, Scalar> out;
    for (const auto& [x, c] : p)
        out.add_term(adjoint(x), conj_of(c));
    return out;
}

template <class Scalar>
NCPoly<TensorMono, Scalar> reduce_tensor(const Word& w)
{
    w.require(AlgebraTag::tensor);
    std::optional<TensorMono> acc = TensorMono::unit();
    for (const auto& s : w.symbols()) {
        const auto& u = std::get<TensorUnit>(s);
        acc = multiply(*acc, TensorMono::e(u.i, u.j, u.n));
        if (!acc)
            return {};
    }
    return NCPoly<TensorMono, Scalar>::monomial(*acc, Scalar(1));
}

template <class Scalar>
NCPoly<MatrixMono, Scalar> adjoint(const NCPoly<MatrixMono, Scalar>& p)
{
    NCPoly<MatrixMono, Scalar> out;
    for (const auto& [x, c] : p)
        out.add_term(x.identity ? x : MatrixMono::e(x.j, x.i), conj_of(c));
    return out;
}

template <class Scalar>
NCPoly<MatrixMono, Scalar> multiply(const NCPoly<MatrixMono, Scalar>& p, const NCPoly<MatrixMono, Scalar>& r)
{
    NCPoly<MatrixMono, Scalar> out;
    for (const auto& [x, c] : p)
        for (const auto& [y, d] : r)
            if (auto xy = multiply(x, y))
                out.add_term(*xy, c * d);
    return out;
}

}  // namespace awf
