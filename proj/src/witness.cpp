#include "diagext/algebra.hpp"
#include "diagext/resolution.hpp"

namespace diagext {

LinearityReport koszul_witness(const AlgebraPtr& A, int hom_bound) {
    Resolution res(semisimple_module(A));
    res.extend_to(hom_bound);
    LinearityCheck lc = is_linear_up_to(res, hom_bound);
    LinearityReport rep;
    rep.linear = lc.linear;
    rep.checked_up_to = hom_bound;
    rep.first_failure = lc.first_failure;
    for (int n = 0; n <= hom_bound; ++n) rep.betti.push_back(res.betti(n));
    return rep;
}

} // namespace diagext
