#include "pbpois/algebra/scalar.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace pbpois {

namespace {

mpq_class parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    std::string s(text);
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed rational literal: " + s);
    bool seen_slash = false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] == '/') {
            if (seen_slash || i == start || i + 1 == s.size()) throw std::invalid_argument("malformed rational literal: " + s);
            seen_slash = true;
        } else if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw std::invalid_argument("malformed rational literal: " + s);
        }
    }
    if (s[0] == '+') s.erase(0, 1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (sgn(q.get_den()) == 0) throw std::domain_error("zero denominator in " + s);
    q.canonicalize();
    return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(10); }

}  // namespace

Scalar::Scalar(long num, long den) : re_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    re_.canonicalize();
}

Scalar::Scalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
}

Scalar Scalar::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty scalar literal");
    if (text.back() != 'i') return Scalar(parse_rational(text));

    std::string_view body = text.substr(0, text.size() - 1);
    // Split at the last sign that is not the leading one.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if (body[i] == '+' || body[i] == '-') {
            split = i;
            break;
        }
    }
    mpq_class re = 0;
    std::string_view im_text = body;
    if (split != std::string_view::npos) {
        re = parse_rational(body.substr(0, split));
        im_text = body.substr(split);
    }
    mpq_class im;
    if (im_text.empty() || im_text == "+") {
        im = 1;
    } else if (im_text == "-") {
        im = -1;
    } else {
        im = parse_rational(im_text);
    }
    return Scalar(re, im);
}

bool Scalar::is_integral() const { return re_.get_den() == 1 && im_.get_den() == 1; }

Scalar& Scalar::operator+=(const Scalar& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    if (is_real() && o.is_real()) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("division by zero scalar");
    if (is_real() && o.is_real()) {
        re_ /= o.re_;
        return *this;
    }
    mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    int c = cmp(a.re_, b.re_);
    if (c == 0) c = cmp(a.im_, b.im_);
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string Scalar::to_string() const {
    if (is_real()) return rational_string(re_);
    std::string out;
    if (sgn(re_) != 0) out = rational_string(re_);
    if (im_ == 1) {
        out += sgn(re_) != 0 ? "+i" : "i";
    } else if (im_ == -1) {
        out += "-i";
    } else {
        if (sgn(re_) != 0 && sgn(im_) > 0) out += "+";
        out += rational_string(im_) + "i";
    }
    return out;
}

mpz_class Scalar::denominator_lcm() const {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), re_.get_den_mpz_t(), im_.get_den_mpz_t());
    return l;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace pbpois
