#ifndef DIAGEXT_ALGEBRA_HPP
#define DIAGEXT_ALGEBRA_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "diagext/matrix.hpp"
#include "diagext/presentation.hpp"

namespace diagext {

struct BasisElem {
    int src = 0; // e_src * x = x
    int tgt = 0; // x * e_tgt = x
    std::string name;
    std::vector<int> path; // arrow indices (path algebras); empty otherwise
};

class GradedAlgebra;
using AlgebraPtr = std::shared_ptr<const GradedAlgebra>;

/* A graded algebra materialized degree by degree: ordered bases of each
 * R_d, full multiplication tables, factorizations through R_1, and the
 * quadratic relation space. Products are written in application order:
 * a right module sees m*(xy) = (m*x)*y.
 *
 * Immutable once built; share freely across threads. */
class GradedAlgebra {
public:
    /* Realize kQ/I degreewise up to max_degree (stops early once a
     * degree comes out zero; the algebra is then complete). */
    static AlgebraPtr materialize(const AlgebraPresentation& P, int max_degree);

    static AlgebraPtr opposite(const AlgebraPtr& A);

    /* R^op (x)_k R on vertex pairs (v,w); basis elements are pairs of
     * basis elements of R, product (p|q)(p'|q') = (p'p | qq'). Right
     * modules over it are R-bimodules via m*(a|b) = a m b. */
    static AlgebraPtr enveloping(const AlgebraPtr& A);

    const Field& field() const { return field_; }
    int vertices() const { return static_cast<int>(vertex_names_.size()); }
    const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
    const std::vector<std::string>& vertex_names() const { return vertex_names_; }

    int max_degree() const { return max_degree_; }
    bool complete() const { return complete_; }
    bool degree_available(int d) const { return d < 0 || d <= max_degree_ || complete_; }
    void require_degree(int d) const {
        if (!degree_available(d))
            throw TruncationError("InsufficientTruncation: need internal degree " +
                                  std::to_string(d) + " but materialized only to " +
                                  std::to_string(max_degree_) + " over " + field_.describe());
    }

    int dim(int d) const {
        if (d < 0) return 0;
        if (d <= max_degree_) return static_cast<int>(basis_.at(d).size());
        require_degree(d);
        return 0; // complete beyond top degree
    }

    const std::vector<BasisElem>& basis(int d) const {
        static const std::vector<BasisElem> empty;
        if (d < 0) return empty;
        if (d <= max_degree_) return basis_.at(d);
        require_degree(d);
        return empty;
    }

    /* Total dimension when complete. */
    int total_dim() const {
        int t = 0;
        for (int d = 0; d <= max_degree_; ++d) t += dim(d);
        return t;
    }

    /* Structure constants: basis(d1)[i] * basis(d2)[j] over basis(d1+d2). */
    const SpRow& mult(int d1, std::size_t i, int d2, std::size_t j) const;

    /* Bilinear extension on coordinate vectors. */
    SpRow mult_vec(int d1, const SpRow& x, int d2, const SpRow& y) const;

    /* basis(d)[k] = sum c * basis(1)[a] * basis(d-1)[m]  (fact_left)
     *            = sum c * basis(d-1)[m] * basis(1)[a]  (fact_right) */
    using Fact = std::vector<std::tuple<Scalar, std::size_t, std::size_t>>;
    const Fact& fact_left(int d, std::size_t k) const { return fact_left_.at(d).at(k); }
    const Fact& fact_right(int d, std::size_t k) const { return fact_right_.at(d).at(k); }

    /* Composable pairs (i,j) with tgt(basis1[i]) == src(basis1[j]), and
     * the kernel of the induced map into R_2: the quadratic relations a
     * module structure must kill. Rows of the matrix are relations in
     * composable-pair coordinates. */
    const std::vector<std::pair<std::size_t, std::size_t>>& composable_pairs() const {
        return composable_pairs_;
    }
    const Matrix& quadratic_relations() const { return *quadratic_relations_; }

    /* Coordinates of a parsed path expression term; degree_out receives
     * the path length. Only available on path-materialized algebras. */
    SpRow path_coords(const std::vector<int>& arrows, int vertex) const;

    /* Enveloping bookkeeping. */
    struct TensorLabel {
        int dp;
        std::size_t ip;
        int dq;
        std::size_t iq;
    };
    bool is_enveloping() const { return base_ != nullptr && !tensor_labels_.empty(); }
    const TensorLabel& tensor_label(int d, std::size_t k) const {
        return tensor_labels_.at(d).at(k);
    }
    std::size_t tensor_index(int d, const TensorLabel& t) const;
    const AlgebraPtr& base() const { return base_; }

    int pair_vertex(int v, int w) const { return v * vertices_of_base_ + w; }
    std::pair<int, int> unpair_vertex(int vw) const {
        return {vw / vertices_of_base_, vw % vertices_of_base_};
    }

private:
    GradedAlgebra() : field_(Field::rationals()) {}

    void build_quadratic_relations();
    void build_facts_from_paths(const std::vector<std::map<std::vector<int>, SpRow>>& rewrite);

    Field field_;
    std::vector<std::string> vertex_names_;
    int max_degree_ = 0;
    bool complete_ = false;
    std::vector<std::vector<BasisElem>> basis_;
    // mult_[d1][d2][i][j]; d1+d2 <= max_degree_
    std::map<std::pair<int, int>, std::vector<std::vector<SpRow>>> mult_;
    std::vector<std::vector<Fact>> fact_left_, fact_right_;
    std::vector<std::pair<std::size_t, std::size_t>> composable_pairs_;
    std::shared_ptr<Matrix> quadratic_relations_;
    std::vector<std::map<std::vector<int>, SpRow>> rewrite_; // path algebras only
    std::vector<std::map<std::vector<int>, int>> path_degree_check_;

    // enveloping extras
    AlgebraPtr base_;
    std::vector<std::vector<TensorLabel>> tensor_labels_;
    // (total degree, dp, ip, iq) -> index in basis(total degree)
    std::map<std::tuple<int, int, std::size_t, std::size_t>, std::size_t> tensor_index_;
    int vertices_of_base_ = 1;
};

/* Report from the Koszulity witness: the minimal resolution of R_0 was
 * computed up to hom_bound and each term checked to be generated in the
 * matching degree. Declared in the algebra module, computed with the
 * resolution machinery. */
struct LinearityReport {
    bool linear = false;
    int checked_up_to = 0;
    int first_failure = -1; // homological degree of the failure, -1 if none
    std::vector<int> betti;
};

LinearityReport koszul_witness(const AlgebraPtr& A, int hom_bound);

} // namespace diagext

#endif
