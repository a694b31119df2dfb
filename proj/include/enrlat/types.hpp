#pragma once

#include <Eigen/Core>

#include "enrlat/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<enrlat::Rat> : GenericNumTraits<enrlat::Rat> {
    typedef enrlat::Rat Real;
    typedef enrlat::Rat NonInteger;
    typedef enrlat::Rat Nested;
    typedef enrlat::Rat Literal;
    static inline Real epsilon() { return enrlat::Rat(0); }
    static inline Real dummy_precision() { return enrlat::Rat(0); }
    static inline int digits10() { return 0; }
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 8,
        AddCost = 60,
        MulCost = 60
    };
};

}  // namespace Eigen

namespace enrlat {

using MatQ = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using VecQ = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

inline bool is_integral(const VecQ& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!v[i].is_integer()) return false;
    return true;
}

inline bool is_integral(const MatQ& m) {
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_integer()) return false;
    return true;
}

inline bool is_zero(const VecQ& v) {
    for (Index i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) return false;
    return true;
}

// gcd of the numerators of an integral vector; 0 for the zero vector.
Int content(const VecQ& v);

std::string to_string(const VecQ& v);

}  // namespace enrlat
