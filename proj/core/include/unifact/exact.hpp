#ifndef UNIFACT_EXACT_HPP
#define UNIFACT_EXACT_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

namespace unifact {

using Cplx = std::complex<double>;

// Complex number with exact rational real and imaginary parts. This is the
// coefficient field for all symbolic work; mpq_class keeps values canonical
// (reduced, positive denominator), so zero and one have unique representations.
class ExactComplex {
public:
    ExactComplex() : re_(0), im_(0) {}
    ExactComplex(long re) : re_(re), im_(0) {}
    ExactComplex(long re, long im) : re_(re), im_(im) {}
    ExactComplex(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    // Parses decimal-free "p/q" strings, e.g. "-1/5", "3".
    static ExactComplex from_strings(const std::string& re, const std::string& im);
    static mpq_class rational_from_string(const std::string& s);

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    ExactComplex operator-() const { return ExactComplex(mpq_class(-re_), mpq_class(-im_)); }

    ExactComplex& operator+=(const ExactComplex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactComplex& operator-=(const ExactComplex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactComplex& operator*=(const ExactComplex& o) {
        mpq_class r = re_ * o.re_ - im_ * o.im_;
        mpq_class i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
    friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
    friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
    ExactComplex inverse() const; // throws DomainError on zero
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        return a * b.inverse();
    }

    friend bool operator==(const ExactComplex& a, const ExactComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

    ExactComplex conj() const { return ExactComplex(re_, mpq_class(-im_)); }

    Cplx to_complex() const { return Cplx(re_.get_d(), im_.get_d()); }

    std::string re_string() const { return re_.get_str(); }
    std::string im_string() const { return im_.get_str(); }
    std::string to_string() const;

private:
    mpq_class re_, im_;
};

} // namespace unifact

#endif
