#include "unifact/exact.hpp"

#include "unifact/errors.hpp"

namespace unifact {

mpq_class ExactComplex::rational_from_string(const std::string& s) {
    if (s.empty())
        throw IoError("empty rational literal");
    if (s.find('.') != std::string::npos)
        throw IoError("rational literal must be decimal-free p/q, got '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw IoError("malformed rational literal '" + s + "'");
    if (q.get_den() == 0)
        throw DomainError("zero denominator in rational literal '" + s + "'");
    q.canonicalize();
    return q;
}

ExactComplex ExactComplex::from_strings(const std::string& re, const std::string& im) {
    return ExactComplex(rational_from_string(re), rational_from_string(im));
}

ExactComplex ExactComplex::inverse() const {
    if (is_zero())
        throw DomainError("division by zero ExactComplex");
    mpq_class n = re_ * re_ + im_ * im_;
    return ExactComplex(mpq_class(re_ / n), mpq_class(-im_ / n));
}

std::string ExactComplex::to_string() const {
    if (im_ == 0)
        return re_.get_str();
    return re_.get_str() + (im_ > 0 ? "+" : "") + im_.get_str() + "i";
}

} // namespace unifact
