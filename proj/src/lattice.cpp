#include "enrlat/lattice.hpp"

#include <stdexcept>

namespace enrlat {

void GramLattice::validate() const {
    if (gram.rows() != gram.cols()) throw std::invalid_argument("GramLattice: gram must be square");
    if (static_cast<Index>(basis_names.size()) != gram.rows())
        throw std::invalid_argument("GramLattice: basis names do not match gram size");
    for (Index i = 0; i < gram.rows(); ++i)
        for (Index j = 0; j < gram.cols(); ++j) {
            if (gram(i, j) != gram(j, i)) throw std::invalid_argument("GramLattice: gram not symmetric");
            if (!gram(i, j).is_integer()) throw std::invalid_argument("GramLattice: gram not integral");
        }
}

Rat pair(const GramLattice& l, const DivClass& x, const DivClass& y) {
    if (x.size() != l.rank() || y.size() != l.rank())
        throw std::invalid_argument("pair: class length does not match lattice rank");
    Rat acc(0);
    for (Index i = 0; i < l.rank(); ++i) {
        if (x[i].is_zero()) continue;
        Rat row(0);
        for (Index j = 0; j < l.rank(); ++j) {
            if (!y[j].is_zero()) row += l.gram(i, j) * y[j];
        }
        acc += x[i] * row;
    }
    return acc;
}

LatticeProfile lattice_profile(const GramLattice& l) {
    LatticeProfile p;
    p.rank = l.rank();
    p.determinant = determinant(l.gram);
    p.signature = signature_of(l.gram);
    p.is_even = true;
    for (Index i = 0; i < l.rank(); ++i) {
        Int d = l.gram(i, i).num();
        if (mpz_odd_p(d.get_mpz_t())) { p.is_even = false; break; }
    }
    return p;
}

std::optional<DivClass> divide_in_lattice(const GramLattice& l, const DivClass& x, const Int& n) {
    if (n == 0) throw std::invalid_argument("divide_in_lattice: n must be positive");
    if (!is_integral(x)) throw std::invalid_argument("divide_in_lattice: class must be integral");
    if (x.size() != l.rank()) throw std::invalid_argument("divide_in_lattice: dimension mismatch");
    DivClass q(x.size());
    for (Index i = 0; i < x.size(); ++i) {
        q[i] = Rat(x[i].num(), n);
        if (!q[i].is_integer()) return std::nullopt;
    }
    return q;
}

bool is_primitive(const GramLattice& l, const DivClass& x) {
    if (!is_integral(x)) throw std::invalid_argument("is_primitive: class must be integral");
    if (x.size() != l.rank()) throw std::invalid_argument("is_primitive: dimension mismatch");
    Int c = content(x);
    if (c == 0) throw std::invalid_argument("is_primitive: zero class");
    return c == 1;
}

GramLattice hyperbolic_plane() {
    GramLattice u;
    u.basis_names = {"e", "f"};
    u.gram = MatQ::Zero(2, 2);
    u.gram(0, 1) = u.gram(1, 0) = Rat(1);
    return u;
}

GramLattice e8_negative() {
    // Negated E8: chain a1..a7 with a8 attached to a5.
    GramLattice l;
    l.gram = MatQ::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        l.basis_names.push_back("a" + std::to_string(i + 1));
        l.gram(i, i) = Rat(-2);
    }
    auto bond = [&](int i, int j) { l.gram(i, j) = l.gram(j, i) = Rat(1); };
    for (int i = 0; i < 6; ++i) bond(i, i + 1);
    bond(7, 4);
    return l;
}

GramLattice hyperbolic_e10() {
    GramLattice u = hyperbolic_plane();
    GramLattice e8 = e8_negative();
    GramLattice l;
    l.basis_names = u.basis_names;
    l.basis_names.insert(l.basis_names.end(), e8.basis_names.begin(), e8.basis_names.end());
    l.gram = MatQ::Zero(10, 10);
    l.gram.block(0, 0, 2, 2) = u.gram;
    l.gram.block(2, 2, 8, 8) = e8.gram;
    return l;
}

}  // namespace enrlat
