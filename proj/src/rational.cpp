#include "enrlat/rational.hpp"

#include <ostream>

#include "enrlat/types.hpp"

namespace enrlat {

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Int isqrt_floor(const Rat& x) {
    if (x.sign() < 0) throw std::domain_error("isqrt_floor: negative argument");
    // floor(sqrt(p/q)) = floor(sqrt(p*q)) / q  (integer division)
    Int pq = x.num() * x.den();
    Int s;
    mpz_sqrt(s.get_mpz_t(), pq.get_mpz_t());
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_mpz_t(), x.den().get_mpz_t());
    return q;
}

Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int content(const VecQ& v) {
    Int g = 0;
    for (Index i = 0; i < v.size(); ++i) {
        if (!v[i].is_integer()) throw std::invalid_argument("content: non-integral vector");
        g = gcd_int(g, v[i].num());
    }
    return g;
}

std::string to_string(const VecQ& v) {
    std::string s = "(";
    for (Index i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace enrlat
