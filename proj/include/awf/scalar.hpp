#pragma once
//
// Coefficient fields for the algebraic layer.
//
// Every algebra in awf is templated over a *field policy* that knows how to
// produce the q-dependent constants (q^e, 1 - q^2, ...).  Two policies exist:
//
//   FloatField  - std::complex<double> coefficients at a fixed numeric q
//   ExactField  - rational functions of an indeterminate q with Gaussian
//                 rational coefficients; identities that hold for all q
//                 compare exactly
//

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace awf {

/// Thrown when a q-dependent value is requested outside 0 < q < 1.
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deformation parameter with 0 < q < 1.
class DeformationParameter {
public:
    explicit DeformationParameter(double q) : q_(q)
    {
        if (!(q > 0.0 && q < 1.0))
            throw domain_error("deformation parameter must satisfy 0 < q < 1, got " +
                               std::to_string(q));
    }

    double value() const noexcept { return q_; }
    double squared() const noexcept { return q_ * q_; }
    double one_minus_q2() const noexcept { return 1.0 - q_ * q_; }
    /// 1 - q^{2m}, strictly positive for m >= 1.
    double one_minus_q2m(unsigned m) const { return 1.0 - std::pow(q_, 2.0 * m); }

private:
    double q_;
};

using Rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Gaussian rationals  Q(i)
// ---------------------------------------------------------------------------

class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(implicit)
    GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }
    bool is_zero() const { return re_ == 0 && im_ == 0; }

    GaussianRational conj() const { return {re_, -im_}; }

    GaussianRational& operator+=(const GaussianRational& o)
    {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o)
    {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re_, -a.im_}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b)
    {
        if (a.im_ == 0 && b.im_ == 0)
            return {a.re_ * b.re_, Rational(0)};
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    GaussianRational inverse() const
    {
        if (is_zero())
            throw std::domain_error("division by zero in Q(i)");
        if (im_ == 0)
            return {Rational(1) / re_, Rational(0)};
        const Rational n = re_ * re_ + im_ * im_;
        return {re_ / n, -im_ / n};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b)
    {
        return a * b.inverse();
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::complex<double> to_complex() const
    {
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

    std::string str() const
    {
        std::ostringstream os;
        if (im_ == 0) {
            os << re_;
        } else if (re_ == 0) {
            os << im_ << "i";
        } else {
            os << "(" << re_ << (im_ > 0 ? "+" : "") << im_ << "i)";
        }
        return os.str();
    }

private:
    Rational re_{0};
    Rational im_{0};
};

// ---------------------------------------------------------------------------
// Univariate polynomials over Q(i) in the indeterminate q
// ---------------------------------------------------------------------------

class QPolynomial {
public:
    QPolynomial() = default;
    QPolynomial(GaussianRational c)  // NOLINT(implicit)
    {
        if (!c.is_zero())
            coeffs_.push_back(std::move(c));
    }
    explicit QPolynomial(std::vector<GaussianRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    /// c * q^e
    static QPolynomial monomial(GaussianRational c, std::size_t e)
    {
        if (c.is_zero())
            return {};
        std::vector<GaussianRational> v(e + 1);
        v[e] = std::move(c);
        return QPolynomial(std::move(v));
    }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const GaussianRational& leading() const { return coeffs_.back(); }
    const std::vector<GaussianRational>& coefficients() const noexcept { return coeffs_; }
    GaussianRational coefficient(std::size_t e) const
    {
        return e < coeffs_.size() ? coeffs_[e] : GaussianRational{};
    }

    /// True when the polynomial is c*q^e for a single term.
    bool is_monomial() const
    {
        return std::count_if(coeffs_.begin(), coeffs_.end(),
                             [](const auto& c) { return !c.is_zero(); }) == 1;
    }
    std::size_t lowest_degree() const
    {
        std::size_t e = 0;
        while (e < coeffs_.size() && coeffs_[e].is_zero())
            ++e;
        return e;
    }

    friend QPolynomial operator+(const QPolynomial& a, const QPolynomial& b)
    {
        std::vector<GaussianRational> r(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            r[i] += a.coeffs_[i];
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i)
            r[i] += b.coeffs_[i];
        return QPolynomial(std::move(r));
    }
    friend QPolynomial operator-(const QPolynomial& a) { return a * QPolynomial(GaussianRational(-1)); }
    friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) { return a + (-b); }
    friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<GaussianRational> r(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                if (!b.coeffs_[j].is_zero())
                    r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return QPolynomial(std::move(r));
    }
    friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Euclidean division: returns (quotient, remainder).
    static std::pair<QPolynomial, QPolynomial> divmod(const QPolynomial& num, const QPolynomial& den)
    {
        if (den.is_zero())
            throw std::domain_error("polynomial division by zero");
        std::vector<GaussianRational> rem = num.coeffs_;
        const long dd = den.degree();
        if (num.degree() < dd)
            return {QPolynomial{}, num};
        std::vector<GaussianRational> quot(static_cast<std::size_t>(num.degree() - dd + 1));
        const GaussianRational lead_inv = den.leading().inverse();
        for (long i = num.degree(); i >= dd; --i) {
            const auto& c = rem[static_cast<std::size_t>(i)];
            if (c.is_zero())
                continue;
            const GaussianRational f = c * lead_inv;
            quot[static_cast<std::size_t>(i - dd)] = f;
            for (long j = 0; j <= dd; ++j)
                rem[static_cast<std::size_t>(i - dd + j)] -= f * den.coeffs_[static_cast<std::size_t>(j)];
        }
        return {QPolynomial(std::move(quot)), QPolynomial(std::move(rem))};
    }

    /// Monic greatest common divisor.
    static QPolynomial gcd(QPolynomial a, QPolynomial b)
    {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.monic();
    }

    QPolynomial monic() const
    {
        if (is_zero())
            return *this;
        return *this * QPolynomial(leading().inverse());
    }

    QPolynomial conj() const
    {
        std::vector<GaussianRational> r;
        r.reserve(coeffs_.size());
        for (const auto& c : coeffs_)
            r.push_back(c.conj());
        return QPolynomial(std::move(r));
    }

    /// Drops a common factor q^e (e <= lowest_degree()).
    QPolynomial shift_down(std::size_t e) const
    {
        return QPolynomial(std::vector<GaussianRational>(coeffs_.begin() + static_cast<long>(e), coeffs_.end()));
    }

    std::complex<double> eval(double q) const
    {
        std::complex<double> acc{0.0, 0.0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * q + it->to_complex();
        return acc;
    }

    std::string str() const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t e = 0; e < coeffs_.size(); ++e) {
            const auto& c = coeffs_[e];
            if (c.is_zero())
                continue;
            std::string cs = c.str();
            bool negative = !cs.empty() && cs[0] == '-';
            if (!first)
                os << (negative ? " - " : " + ");
            else if (negative)
                os << "-";
            if (negative)
                cs.erase(0, 1);
            if (e == 0 || cs != "1")
                os << cs;
            if (e > 0) {
                if (cs != "1")
                    os << "*";
                os << "q";
                if (e > 1)
                    os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

// ---------------------------------------------------------------------------
// Rational functions of q over Q(i), kept in lowest terms with monic
// denominator.
// ---------------------------------------------------------------------------

class QFunction {
public:
    QFunction() : den_(GaussianRational(1)) {}
    QFunction(long v) : num_(GaussianRational(v)), den_(GaussianRational(1)) {}  // NOLINT(implicit)
    QFunction(GaussianRational v) : num_(std::move(v)), den_(GaussianRational(1)) {}  // NOLINT(implicit)
    QFunction(QPolynomial num, QPolynomial den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    /// q^e for any integer e.
    static QFunction q_power(long e)
    {
        if (e >= 0)
            return QFunction(QPolynomial::monomial(GaussianRational(1), static_cast<std::size_t>(e)),
                             QPolynomial(GaussianRational(1)));
        return QFunction(QPolynomial(GaussianRational(1)),
                         QPolynomial::monomial(GaussianRational(1), static_cast<std::size_t>(-e)));
    }

    const QPolynomial& numerator() const noexcept { return num_; }
    const QPolynomial& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    QFunction conj() const { return QFunction(num_.conj(), den_.conj()); }

    friend QFunction operator+(const QFunction& a, const QFunction& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        if (a.den_ == b.den_)
            return QFunction(a.num_ + b.num_, a.den_);
        return QFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend QFunction operator-(const QFunction& a) { return QFunction(-a.num_, a.den_, raw_tag{}); }
    friend QFunction operator-(const QFunction& a, const QFunction& b) { return a + (-b); }
    friend QFunction operator*(const QFunction& a, const QFunction& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        return QFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend QFunction operator/(const QFunction& a, const QFunction& b)
    {
        if (b.is_zero())
            throw std::domain_error("rational function division by zero");
        return QFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    QFunction& operator+=(const QFunction& o) { return *this = *this + o; }
    QFunction& operator-=(const QFunction& o) { return *this = *this - o; }
    QFunction& operator*=(const QFunction& o) { return *this = *this * o; }
    friend bool operator==(const QFunction& a, const QFunction& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    std::complex<double> eval(double q) const { return num_.eval(q) / den_.eval(q); }

    std::string str() const
    {
        if (den_.degree() == 0)
            return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    struct raw_tag {};
    QFunction(QPolynomial num, QPolynomial den, raw_tag) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize()
    {
        if (den_.is_zero())
            throw std::domain_error("rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = QPolynomial(GaussianRational(1));
            return;
        }
        // cancel common powers of q cheaply before the general gcd
        const std::size_t shift = std::min(num_.lowest_degree(), den_.lowest_degree());
        if (shift > 0) {
            num_ = num_.shift_down(shift);
            den_ = den_.shift_down(shift);
        }
        if (den_.degree() > 0 && num_.degree() > 0 && !den_.is_monomial()) {
            const QPolynomial g = QPolynomial::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = QPolynomial::divmod(num_, g).first;
                den_ = QPolynomial::divmod(den_, g).first;
            }
        }
        const GaussianRational lead_inv = den_.leading().inverse();
        if (!(lead_inv == GaussianRational(1))) {
            num_ = num_ * QPolynomial(lead_inv);
            den_ = den_ * QPolynomial(lead_inv);
        }
    }

    QPolynomial num_;
    QPolynomial den_;
};

// ---------------------------------------------------------------------------
// scalar helpers found by ADL / overload resolution
// ---------------------------------------------------------------------------

using Complex = std::complex<double>;

inline bool is_zero(const Complex& v) noexcept { return v == Complex{}; }
inline bool is_zero(const QFunction& v) noexcept { return v.is_zero(); }
inline Complex conj_of(const Complex& v) noexcept { return std::conj(v); }
inline QFunction conj_of(const QFunction& v) { return v.conj(); }

inline std::string to_string(const Complex& v)
{
    std::ostringstream os;
    os.precision(17);
    os << v.real();
    if (v.imag() != 0.0)
        os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    return os.str();
}
inline std::string to_string(const QFunction& v) { return v.str(); }

/// Floating coefficients at a fixed q.
struct FloatField {
    using value_type = Complex;

    explicit FloatField(DeformationParameter q) : q_(q.value()) {}
    explicit FloatField(double q) : FloatField(DeformationParameter(q)) {}

    double q() const noexcept { return q_; }
    value_type constant(long v) const { return {static_cast<double>(v), 0.0}; }
    value_type q_pow(long e) const { return {std::pow(q_, static_cast<double>(e)), 0.0}; }
    Complex to_complex(const value_type& v) const { return v; }
    static constexpr bool exact = false;

private:
    double q_;
};

/// Exact coefficients in Q(i)(q); `q()` is only used to print numeric values.
struct ExactField {
    using value_type = QFunction;

    explicit ExactField(DeformationParameter q) : q_(q.value()) {}
    explicit ExactField(double q) : ExactField(DeformationParameter(q)) {}

    double q() const noexcept { return q_; }
    value_type constant(long v) const { return QFunction(v); }
    value_type q_pow(long e) const { return QFunction::q_power(e); }
    Complex to_complex(const value_type& v) const { return v.eval(q_); }
    static constexpr bool exact = true;

private:
    double q_;
};

template <class F>
concept CoefficientField = requires(const F& f, const typename F::value_type& v) {
    { f.constant(1L) } -> std::same_as<typename F::value_type>;
    { f.q_pow(2L) } -> std::same_as<typename F::value_type>;
    { f.to_complex(v) } -> std::same_as<Complex>;
    { is_zero(v) } -> std::same_as<bool>;
};

static_assert(CoefficientField<FloatField>);
static_assert(CoefficientField<ExactField>);

}  // namespace awf
