#pragma once

#include "brinkmg/dense.hpp"
#include "brinkmg/operators.hpp"

namespace brinkmg {

/// Flat unknown ordering: all u values, then v, then p, each in field
/// storage order.
inline std::vector<double> state_pack(const StateVector& x) {
    std::vector<double> out;
    out.reserve(state_size(x));
    out.insert(out.end(), x.u.val.begin(), x.u.val.end());
    out.insert(out.end(), x.v.val.begin(), x.v.val.end());
    out.insert(out.end(), x.p.val.begin(), x.p.val.end());
    return out;
}

inline StateVector state_unpack(const StaggeredGrid& g, const std::vector<double>& flat) {
    StateVector x = make_state(g);
    size_t k = 0;
    for (auto* f : {&x.u, &x.v, &x.p})
        for (double& v : f->val) v = flat[k++];
    return x;
}

/// Explicit matrix of the MAC operator, one apply_K per unit state. Used by
/// the coarsest-level direct solve and as an entrywise oracle in tests.
inline DenseMatrix assemble_K(const StaggeredGrid& g, const OperatorParams& params) {
    const int dim = static_cast<int>(state_size(make_state(g)));
    DenseMatrix m(dim, dim);
    StateVector e = make_state(g);
    std::vector<double> flat(dim, 0.0);
    for (int col = 0; col < dim; ++col) {
        flat[col] = 1.0;
        e = state_unpack(g, flat);
        flat[col] = 0.0;
        const std::vector<double> ke = state_pack(apply_K(e, params));
        for (int row = 0; row < dim; ++row) m(row, col) = ke[row];
    }
    return m;
}

}  // namespace brinkmg
