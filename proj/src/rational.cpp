#include "relip/rational.hpp"

#include <cctype>
#include <sstream>

namespace relip {

Rational parseRational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) throw ParseError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Integer num(s);
            return Rational(num);
        }
        std::string numPart = s.substr(0, slash);
        std::string denPart = s.substr(slash + 1);
        if (numPart.empty() || denPart.empty())
            throw ParseError("malformed rational '" + text + "'");
        Integer num(numPart);
        Integer den(denPart);
        return makeRational(num, den);
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed rational '" + text + "'");
    }
}

std::string toString(const Rational& q) { return q.get_str(); }

std::string toDecimalString(const Rational& q, int digits) {
    if (digits < 1) digits = 1;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer num = q.get_num() * scale;
    Integer den = q.get_den();
    bool negative = num < 0;
    if (negative) num = -num;
    // round half away from zero
    Integer scaled = (2 * num + den) / (2 * den);
    Integer ip = scaled / scale;
    Integer fp = scaled % scale;
    std::string frac = fp.get_str();
    frac.insert(frac.begin(), static_cast<size_t>(digits) - frac.size(), '0');
    std::string out;
    if (negative && (ip != 0 || fp != 0)) out.push_back('-');
    out += ip.get_str();
    out.push_back('.');
    out += frac;
    return out;
}

bool isPerfectSquare(const Rational& q) {
    if (q < 0) return false;
    return mpz_perfect_square_p(q.get_num().get_mpz_t()) != 0 &&
           mpz_perfect_square_p(q.get_den().get_mpz_t()) != 0;
}

std::optional<Rational> exactSqrt(const Rational& q) {
    if (!isPerfectSquare(q)) return std::nullopt;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
    return makeRational(n, d);
}

std::pair<Rational, Rational> sqrtBounds(const Rational& q, int precBits) {
    if (q < 0) throw Error("sqrtBounds: negative argument");
    if (q == 0) return {Rational(0), Rational(0)};
    if (auto ex = exactSqrt(q)) return {*ex, *ex};
    Integer scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(),
                 static_cast<unsigned long>(precBits));
    // N = floor(q * scale^2)
    Integer n = q.get_num() * scale * scale;
    Integer d = q.get_den();
    Integer N = n / d;
    Integer s;
    mpz_sqrt(s.get_mpz_t(), N.get_mpz_t());
    Rational lo = makeRational(s, scale);
    Rational hi = makeRational(s + 1, scale);
    return {lo, hi};
}

VecQ primitive(const VecQ& v) {
    Integer denLcm(1);
    for (Index i = 0; i < v.size(); ++i) {
        Integer den = v[i].get_den();
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), den.get_mpz_t());
    }
    Integer numGcd(0);
    std::vector<Integer> scaled(static_cast<size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) {
        Rational s = v[i] * Rational(denLcm);
        scaled[static_cast<size_t>(i)] = s.get_num();
        mpz_gcd(numGcd.get_mpz_t(), numGcd.get_mpz_t(),
                scaled[static_cast<size_t>(i)].get_mpz_t());
    }
    if (numGcd == 0) return VecQ::Zero(v.size());
    VecQ out(v.size());
    for (Index i = 0; i < v.size(); ++i)
        out[i] = Rational(scaled[static_cast<size_t>(i)] / numGcd);
    return out;
}

VecQ primitiveSigned(const VecQ& v) {
    VecQ p = primitive(v);
    for (Index i = 0; i < p.size(); ++i) {
        if (p[i] != 0) {
            if (p[i] < 0) p = -p;
            break;
        }
    }
    return p;
}

int lexCompare(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (Index i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

bool isZero(const VecQ& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (v[i] != 0) return false;
    return true;
}

VecQ zeroVec(Index n) { return VecQ::Zero(n); }

VecQ concat(const VecQ& a, const VecQ& b) {
    VecQ out(a.size() + b.size());
    out.head(a.size()) = a;
    out.tail(b.size()) = b;
    return out;
}

std::string vecToString(const VecQ& v) {
    std::ostringstream os;
    os << "(";
    for (Index i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i].get_str();
    }
    os << ")";
    return os.str();
}

}  // namespace relip
