#pragma once

#include <map>
#include <string>
#include <utility>

#include "awf/scalar.hpp"

namespace awf {

/// Finitely supported linear combination of monomials.  Zero coefficients are
/// never stored, so two polynomials are equal iff their term maps are equal.
template <class Mono, class Scalar>
class NCPoly {
public:
    using monomial_type = Mono;
    using scalar_type = Scalar;
    using map_type = std::map<Mono, Scalar>;

    NCPoly() = default;

    static NCPoly monomial(const Mono& m, const Scalar& c)
    {
        NCPoly p;
        p.add_term(m, c);
        return p;
    }

    void add_term(const Mono& m, const Scalar& c)
    {
        if (is_zero(c))
            return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (is_zero(it->second))
                terms_.erase(it);
        }
    }

    const map_type& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    Scalar coefficient(const Mono& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar{} : it->second;
    }

    NCPoly& operator+=(const NCPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }
    NCPoly& operator-=(const NCPoly& o)
    {
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator-(const NCPoly& a) { return NCPoly{} - a; }
    friend NCPoly operator*(const Scalar& s, const NCPoly& p)
    {
        NCPoly r;
        if (is_zero(s))
            return r;
        for (const auto& [m, c] : p.terms_)
            r.add_term(m, s * c);
        return r;
    }
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

private:
    map_type terms_;
};

/// "c1 m1 + c2 m2 ..." using the monomial and scalar to_string overloads.
template <class Mono, class Scalar>
std::string format_poly(const NCPoly<Mono, Scalar>& p)
{
    if (p.empty())
        return "0";
    std::string out;
    for (const auto& [m, c] : p) {
        if (!out.empty())
            out += " + ";
        out += "(" + to_string(c) + ")*" + to_string(m);
    }
    return out;
}

}  // namespace awf
