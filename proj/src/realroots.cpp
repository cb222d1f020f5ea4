#include "relip/realroots.hpp"

#include "relip/linalg.hpp"

#include <algorithm>

namespace relip {

Poly Poly::constant(const Rational& a) {
    Poly p;
    if (a != 0) p.c = {a};
    return p;
}

Poly Poly::fromCoeffs(std::vector<Rational> coeffs) {
    Poly p;
    p.c = std::move(coeffs);
    p.normalize();
    return p;
}

void Poly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    Poly d;
    for (size_t i = 1; i < c.size(); ++i)
        d.c.push_back(Rational(static_cast<long>(i)) * c[i]);
    d.normalize();
    return d;
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly out;
    out.c.resize(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) out.c[i] += b.c[i];
    out.normalize();
    return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (Rational(-1) * b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.isZero() || b.isZero()) return Poly::zero();
    Poly out;
    out.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
    out.normalize();
    return out;
}

Poly operator*(const Rational& s, const Poly& p) {
    Poly out = p;
    for (auto& x : out.c) x *= s;
    out.normalize();
    return out;
}

Poly polyRem(const Poly& a, const Poly& b) {
    if (b.isZero()) throw Error("polyRem: division by zero polynomial");
    Poly r = a;
    while (!r.isZero() && r.degree() >= b.degree()) {
        Rational factor = r.c.back() / b.c.back();
        int shift = r.degree() - b.degree();
        for (size_t i = 0; i < b.c.size(); ++i)
            r.c[i + static_cast<size_t>(shift)] -= factor * b.c[i];
        r.normalize();
    }
    return r;
}

Poly polyGcd(Poly a, Poly b) {
    while (!b.isZero()) {
        Poly r = polyRem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.isZero()) {
        Rational lead = a.c.back();
        a = (Rational(1) / lead) * a;
    }
    return a;
}

Poly squarefreePart(const Poly& p) {
    if (p.isZero() || p.degree() <= 1) return p;
    Poly g = polyGcd(p, p.derivative());
    if (g.degree() == 0) return p;
    // p / g by synthetic long division
    Poly q;
    Poly r = p;
    q.c.assign(static_cast<size_t>(p.degree() - g.degree()) + 1, Rational(0));
    while (!r.isZero() && r.degree() >= g.degree()) {
        Rational factor = r.c.back() / g.c.back();
        int shift = r.degree() - g.degree();
        q.c[static_cast<size_t>(shift)] = factor;
        for (size_t i = 0; i < g.c.size(); ++i)
            r.c[i + static_cast<size_t>(shift)] -= factor * g.c[i];
        r.normalize();
    }
    q.normalize();
    return q;
}

namespace {

std::vector<Poly> sturmChain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().isZero()) {
        Poly r = polyRem(chain[chain.size() - 2], chain.back());
        chain.push_back(Rational(-1) * r);
    }
    chain.pop_back();
    return chain;
}

int signVariationsAt(const std::vector<Poly>& chain, const Rational& x) {
    int variations = 0, last = 0;
    for (const Poly& p : chain) {
        int s = sgn(p.eval(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

// Cauchy root bound: all real roots lie in (-B, B).
Rational rootBound(const Poly& p) {
    Rational maxRatio(0);
    const Rational& lead = p.c.back();
    for (size_t i = 0; i + 1 < p.c.size(); ++i) {
        Rational r = abs(p.c[i] / lead);
        if (r > maxRatio) maxRatio = r;
    }
    return maxRatio + 1;
}

void isolate(const std::vector<Poly>& chain, const Poly& p, Rational lo,
             Rational hi, int vLo, int vHi,
             std::vector<std::pair<Rational, Rational>>& out) {
    int nRoots = vLo - vHi;
    if (nRoots <= 0) return;
    if (nRoots == 1) {
        out.emplace_back(lo, hi);
        return;
    }
    Rational mid = (lo + hi) / 2;
    while (p.eval(mid) == 0) {
        // nudge the split point off a root
        mid = (lo + mid) / 2;
    }
    int vMid = signVariationsAt(chain, mid);
    isolate(chain, p, lo, mid, vLo, vMid, out);
    isolate(chain, p, mid, hi, vMid, vHi, out);
}

}  // namespace

std::vector<std::pair<Rational, Rational>> isolateRealRoots(const Poly& p) {
    std::vector<std::pair<Rational, Rational>> out;
    if (p.isZero() || p.degree() == 0) return out;
    if (p.degree() == 1) {
        Rational root = -p.c[0] / p.c[1];
        out.emplace_back(root - 1, root + 1);
        return out;
    }
    auto chain = sturmChain(p);
    Rational bound = rootBound(p);
    Rational lo = -bound, hi = bound;
    // endpoints are not roots: |roots| < bound
    int vLo = signVariationsAt(chain, lo);
    int vHi = signVariationsAt(chain, hi);
    isolate(chain, p, lo, hi, vLo, vHi, out);
    return out;
}

std::pair<Rational, Rational> refineRootInterval(const Poly& p, Rational lo,
                                                 Rational hi,
                                                 const Rational& width) {
    int sLo = sgn(p.eval(lo));
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        int sMid = sgn(p.eval(mid));
        if (sMid == 0) {
            Rational eps = width / 4;
            return {mid - eps, mid + eps};
        }
        if (sMid == sLo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {lo, hi};
}

namespace {

std::vector<Integer> smallDivisors(Integer n, unsigned long bound) {
    if (n < 0) n = -n;
    std::vector<Integer> divs;
    if (n == 0) return divs;
    if (n > Integer(bound) * Integer(bound)) {
        // still try divisors up to bound plus n itself
        for (unsigned long d = 1; Integer(d) * Integer(d) <= Integer(bound) * Integer(bound) && d <= bound; ++d) {
            if (n % d == 0) {
                divs.push_back(Integer(d));
                divs.push_back(n / d);
            }
        }
        divs.push_back(n);
        return divs;
    }
    for (Integer d(1); d * d <= n; ++d) {
        if (n % d == 0) {
            divs.push_back(d);
            divs.push_back(n / d);
        }
        if (d > Integer(bound)) return divs;  // give up on completeness
    }
    return divs;
}

}  // namespace

std::optional<std::vector<Rational>> rationalRoots(Poly& p,
                                                   unsigned long trialBound) {
    std::vector<Rational> roots;
    if (p.isZero()) return roots;
    // strip roots at zero
    while (!p.c.empty() && p.c.front() == 0) {
        roots.push_back(Rational(0));
        p.c.erase(p.c.begin());
    }
    if (p.degree() < 1) return roots;
    // clear denominators
    Integer denLcm(1);
    for (const auto& q : p.c)
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(),
                q.get_den().get_mpz_t());
    std::vector<Integer> ic;
    for (const auto& q : p.c) ic.push_back(Integer(q * Rational(denLcm)));
    Integer a0 = ic.front(), an = ic.back();
    Integer absA0 = abs(a0), absAn = abs(an);
    if (absA0 > Integer(trialBound) * Integer(trialBound) ||
        absAn > Integer(trialBound) * Integer(trialBound))
        return std::nullopt;
    auto ps = smallDivisors(a0, trialBound);
    auto qs = smallDivisors(an, trialBound);
    bool progress = true;
    while (progress && p.degree() >= 1) {
        progress = false;
        for (const Integer& pp : ps) {
            for (const Integer& qq : qs) {
                for (int s : {1, -1}) {
                    Rational cand = makeRational(s * pp, qq);
                    while (p.degree() >= 1 && p.eval(cand) == 0) {
                        roots.push_back(cand);
                        // deflate by (x - cand)
                        std::vector<Rational> nc(p.c.size() - 1, Rational(0));
                        Rational carry = p.c.back();
                        for (size_t i = p.c.size() - 1; i-- > 0;) {
                            nc[i] = carry;
                            carry = p.c[i] + carry * cand;
                        }
                        p.c = std::move(nc);
                        p.normalize();
                        progress = true;
                    }
                }
            }
            if (p.degree() < 1) break;
        }
    }
    return roots;
}

Poly pencilCharPoly(const MatQ& m, const MatQ& n) {
    if (m.rows() != m.cols() || n.rows() != n.cols() || m.rows() != n.rows())
        throw DimensionError("pencilCharPoly: dimension mismatch");
    const Index k = m.rows();
    if (k == 0) return Poly::constant(Rational(1));
    // interpolate det(M - t N) at t = 0..k
    std::vector<Rational> samples;
    for (Index t = 0; t <= k; ++t) {
        MatQ a = m - Rational(static_cast<long>(t)) * n;
        samples.push_back(determinant(std::move(a)));
    }
    // Lagrange interpolation on nodes 0..k
    Poly result = Poly::zero();
    for (Index i = 0; i <= k; ++i) {
        Poly basis = Poly::constant(Rational(1));
        Rational denom(1);
        for (Index j = 0; j <= k; ++j) {
            if (i == j) continue;
            basis = basis * Poly::fromCoeffs({Rational(-static_cast<long>(j)),
                                              Rational(1)});
            denom *= Rational(static_cast<long>(i) - static_cast<long>(j));
        }
        result = result + (samples[static_cast<size_t>(i)] / denom) * basis;
    }
    return result;
}

int QuadExt::signOf() const {
    int sa = sgn(a), sb = sgn(b);
    if (d == 0 || sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 vs b^2 d
    Rational lhs = a * a, rhs = b * b * Rational(d);
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;
    return (c > 0) ? sa : sb;
}

namespace {
Integer mergeD(const Integer& x, const Integer& y) {
    if (x == 0) return y;
    if (y == 0) return x;
    if (x != y) throw Error("QuadExt: mixed radicands");
    return x;
}
}  // namespace

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a + y.a, x.b + y.b, mergeD(x.d, y.d));
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    return QuadExt(x.a - y.a, x.b - y.b, mergeD(x.d, y.d));
}

QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    Integer d = mergeD(x.d, y.d);
    return QuadExt(x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a,
                   d);
}

QuadExt inverse(const QuadExt& x) {
    Rational norm = x.a * x.a - x.b * x.b * Rational(x.d);
    if (norm == 0) throw Error("QuadExt: inverse of zero");
    return QuadExt(x.a / norm, -x.b / norm, x.d);
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    return x * inverse(y);
}

QuadExt evalAt(const Poly& p, const QuadExt& x) {
    QuadExt acc = QuadExt::rationalValue(Rational(0));
    acc.d = x.d;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        acc = acc * x + QuadExt(*it, Rational(0), x.d);
    }
    return acc;
}

std::vector<QuadExt> quadraticRoots(const Poly& p) {
    std::vector<QuadExt> roots;
    if (p.isZero()) return roots;
    if (p.degree() == 1) {
        roots.push_back(QuadExt::rationalValue(-p.c[0] / p.c[1]));
        return roots;
    }
    if (p.degree() != 2) throw Error("quadraticRoots: degree > 2");
    const Rational &a = p.c[2], &b = p.c[1], &c = p.c[0];
    Rational disc = b * b - 4 * a * c;
    if (disc < 0) return roots;
    if (auto s = exactSqrt(disc)) {
        roots.push_back(QuadExt::rationalValue((-b - *s) / (2 * a)));
        roots.push_back(QuadExt::rationalValue((-b + *s) / (2 * a)));
        return roots;
    }
    // represent roots in Q(sqrt(D)) with D = num(disc)*den(disc)
    Integer dInt = disc.get_num() * disc.get_den();
    Rational scale = Rational(1) / Rational(disc.get_den());
    // sqrt(disc) = sqrt(dInt) / den(disc)
    QuadExt sq(Rational(0), scale, dInt);
    QuadExt minusB(-b, Rational(0), dInt);
    QuadExt twoA(2 * a, Rational(0), dInt);
    roots.push_back((minusB - sq) / twoA);
    roots.push_back((minusB + sq) / twoA);
    return roots;
}

}  // namespace relip
