#ifndef DIAGEXT_HOCHSCHILD_HPP
#define DIAGEXT_HOCHSCHILD_HPP

#include <memory>

#include "diagext/extalg.hpp"

namespace diagext {

/* R as a right module over R^e (m*(a|b) = a m b). */
ModulePtr regular_bimodule(const AlgebraPtr& A, AlgebraPtr* out_env = nullptr);

/* HH^*(R) = Ext_{R^e}(R, R) with products, split into the diagonal part
 * and the rest. */
struct HochschildData {
    AlgebraPtr E;
    ModulePtr B;
    std::shared_ptr<Resolution> RB;
    std::shared_ptr<ExtTable> table;
    std::vector<std::size_t> dims;       // dim HH^n, n = 0..n_max
    std::vector<std::size_t> delta_dims; // dim Delta_R^n
};

HochschildData hochschild(const AlgebraPtr& A, int n_max);

/* E_R = Ext^*_R(R_0, R_0) with products. */
struct ExtAlgebraData {
    ModulePtr R0;
    std::shared_ptr<Resolution> RS;
    std::shared_ptr<ExtTable> table;
    std::vector<std::size_t> dims;
    bool diagonal_concentrated = true; // slices live at i = -n
};

ExtAlgebraData ext_algebra_of_semisimple(const AlgebraPtr& A, int n_max);

/* The map T = R_0 (x)_R - from Hochschild classes to E_R classes:
 * tensoring the minimal bimodule resolution down to the simple side,
 * validating that the result is again a minimal resolution, and
 * transporting classes through comparison isomorphisms. */
class TMap {
public:
    TMap(const AlgebraPtr& A, int n_max);

    HochschildData& hh() { return hh_; }
    ExtAlgebraData& es() { return es_; }
    int n_max() const { return n_max_; }

    /* T(eta) in E_R coordinates; kills everything with radical image. */
    ExtClass apply(const ExtClass& hh_class);

private:
    int n_max_;
    HochschildData hh_;
    ExtAlgebraData es_;
    std::shared_ptr<LiteralComplex> tensored_;
    std::vector<GradedMap> comparison_; // RS.P(n) -> tensored.P(n), isos
};

/* Graded center of an Ext table: homogeneous u with uv = (-1)^{|u||v|}vu
 * against every stored homogeneous v (window-relative). */
struct GradedCenter {
    int bound = 0;
    std::vector<std::size_t> dims;
    std::vector<std::vector<ExtElement>> basis; // per degree
};

GradedCenter graded_center(ExtTable& T, int bound);

struct GrCentReport {
    int n_max = 0;
    std::vector<std::size_t> delta_dims;
    std::vector<std::size_t> center_dims;
    std::vector<std::size_t> t_ranks;
    std::vector<bool> per_degree;
    bool pass = false;
};

/* dim Delta_R^n = dim Z_gr(E_R)^n with T restricted to the diagonal a
 * bijection onto the center slice, degree by degree. */
GrCentReport verify_gr_cent(const AlgebraPtr& A, int n_max, bool throw_on_failure = true);

struct CenterWitness {
    ExtElement element;
    int degree = 0;
    int powers_checked = 0; // all powers up to this stayed nonzero
};

/* Search the positive-degree graded center for an element whose powers
 * stay nonzero within the table window. */
std::optional<CenterWitness> find_non_nilpotent_center(ExtTable& T, const GradedCenter& Z,
                                                       int degree_bound, int power_bound);

} // namespace diagext

#endif
