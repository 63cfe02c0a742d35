#ifndef DIAGEXT_GMODULE_HPP
#define DIAGEXT_GMODULE_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "diagext/algebra.hpp"

namespace diagext {

class GradedModule;
using ModulePtr = std::shared_ptr<const GradedModule>;

/* Graded right module, stored per (vertex, internal degree) block with
 * arrow actions in row-vector convention: coordinates map as x -> x*B. */
class GradedModule {
public:
    struct Data {
        AlgebraPtr A;
        int lo = 0, hi = -1; // support window; empty when hi < lo
        bool window_exact = true; // zero outside the window is a theorem, not a cutoff
        std::map<std::pair<int, int>, std::size_t> dims;   // (v, i) -> dim > 0
        std::map<std::pair<int, int>, Matrix> action;      // (arrow, i)
        std::map<std::pair<int, int>, std::vector<std::string>> labels;
    };

    explicit GradedModule(Data d) : d_(std::move(d)) {}

    const AlgebraPtr& algebra() const { return d_.A; }
    const Field& field() const { return d_.A->field(); }
    int lo() const { return d_.lo; }
    int hi() const { return d_.hi; }
    bool window_exact() const { return d_.window_exact; }

    std::size_t dim(int v, int i) const {
        auto it = d_.dims.find({v, i});
        return it == d_.dims.end() ? 0 : it->second;
    }
    std::size_t dim_at(int i) const {
        std::size_t t = 0;
        for (int v = 0; v < d_.A->vertices(); ++v) t += dim(v, i);
        return t;
    }
    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& [k, n] : d_.dims) t += n;
        return t;
    }
    bool is_zero() const { return d_.dims.empty(); }

    /* Degrees that actually carry a component. */
    std::vector<int> support() const {
        std::vector<int> s;
        for (const auto& [k, n] : d_.dims)
            if (s.empty() || s.back() != k.second) s.push_back(k.second);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    /* b - a + 1 over the nonzero components; 0 for the zero module. */
    int graded_length() const {
        auto s = support();
        return s.empty() ? 0 : s.back() - s.front() + 1;
    }

    /* Action of arrow a at degree i: dim(src,i) x dim(tgt,i+1). */
    Matrix action(int a, int i) const;

    /* Action of the algebra basis element (d, k) starting at degree i:
     * dim(src,i) x dim(tgt,i+d). */
    Matrix act_elem(int d, std::size_t k, int i) const;

    /* Action of a homogeneous element given by coordinates in basis(d). */
    Matrix act_coords(int d, const SpRow& coords, int src_vertex, int i) const;

    std::string label(int v, int i, std::size_t k) const {
        auto it = d_.labels.find({v, i});
        if (it != d_.labels.end() && k < it->second.size()) return it->second[k];
        return "m[" + std::to_string(v) + "," + std::to_string(i) + "," + std::to_string(k) + "]";
    }

    /* Every quadratic relation of the algebra acts as zero. */
    void validate() const;

    const Data& data() const { return d_; }

private:
    Data d_;
};

/* Degree-homogeneous homomorphism, blockwise. */
class GradedMap {
public:
    GradedMap(ModulePtr src, ModulePtr tgt, int degree)
        : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree) {}

    const ModulePtr& src() const { return src_; }
    const ModulePtr& tgt() const { return tgt_; }
    int degree() const { return degree_; }

    Matrix block(int v, int i) const;
    void set_block(int v, int i, Matrix m);

    bool is_zero() const;
    GradedMap then(const GradedMap& g) const; // composition, this first
    GradedMap plus(const GradedMap& g, const Scalar& c) const; // this + c*g
    GradedMap scaled(const Scalar& c) const;
    GradedMap shifted(int m) const; // same blocks between shifted modules

    /* f(m*a) = f(m)*a on every block pair. */
    bool is_linear() const;

    bool is_mono() const;
    bool is_epi() const;
    bool is_iso() const { return is_mono() && is_epi(); }

    const std::map<std::pair<int, int>, Matrix>& blocks() const { return blocks_; }

private:
    ModulePtr src_, tgt_;
    int degree_;
    std::map<std::pair<int, int>, Matrix> blocks_; // keyed by (v, i), zero blocks absent
};

/* Subspace of a module, RREF rows per (vertex, degree). */
struct SubBasis {
    std::map<std::pair<int, int>, Matrix> rows; // (v,i) -> RREF rows in M-coordinates
    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& [k, m] : rows) t += m.rows();
        return t;
    }
};

/* --- constructors --- */

ModulePtr zero_module(AlgebraPtr A);
ModulePtr simple_module(AlgebraPtr A, int v);
ModulePtr shift_module(const ModulePtr& M, int m); // M(m)_i = M_{i+m}

/* Direct sum with no bookkeeping (tests). */
ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N);

ModulePtr from_representation(AlgebraPtr A, const RepresentationModule& rep);

/* Bind a parsed presentation. RegularBimodule returns a module over
 * enveloping(A) (reachable via result->algebra()). */
ModulePtr from_presentation(const ModulePresentation& mp, const AlgebraPtr& A);

/* --- projective sums P = (+)_k e_{v_k} R(-d_k) --- */

struct ProjSummand {
    int vertex;
    int shift;
    bool operator==(const ProjSummand& o) const { return vertex == o.vertex && shift == o.shift; }
};

class ProjSum {
public:
    ProjSum(AlgebraPtr A, std::vector<ProjSummand> summands);

    const ModulePtr& module() const { return module_; }
    const std::vector<ProjSummand>& summands() const { return summands_; }
    const AlgebraPtr& algebra() const { return A_; }
    bool empty() const { return summands_.empty(); }

    /* Basis of the component at (v,i): list of (summand k, algebra basis
     * index in degree i - d_k). */
    const std::vector<std::pair<std::size_t, std::size_t>>& labels(int v, int i) const;
    /* Position of (summand k, basis elem b) inside component (v,i). */
    std::size_t position(std::size_t k, std::size_t b, int v, int i) const;

    /* Row vector of the generator of summand k inside its component. */
    Matrix generator_row(std::size_t k) const;

    /* Multiset of generator degrees. */
    std::vector<int> generator_degrees() const {
        std::vector<int> v;
        for (const auto& s : summands_) v.push_back(s.shift);
        return v;
    }

private:
    AlgebraPtr A_;
    std::vector<ProjSummand> summands_;
    ModulePtr module_;
    std::map<std::pair<int, int>, std::vector<std::pair<std::size_t, std::size_t>>> labels_;
    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> pos_; // (k, b, i)
};

ModulePtr regular_module(const AlgebraPtr& A, ProjSum* out_sum = nullptr);

/* The degree-s map P -> N with prescribed generator images; rows[k] is a
 * 1 x dim_N(v_k, d_k + s) row. P is free on its generators, so any
 * choice extends R-linearly. */
GradedMap map_from_generator_images(const ProjSum& P, const ModulePtr& N, int s,
                                    const std::vector<Matrix>& rows);

/* Image rows of the generators under a map defined on P. */
std::vector<Matrix> generator_images(const ProjSum& P, const GradedMap& f);

/* --- submodules / quotients --- */

/* Close homogeneous spanning rows under the arrow action; returns RREF
 * bases per component. Generators: (vertex, degree, row vector). */
SubBasis span_submodule(const ModulePtr& M,
                        const std::vector<std::tuple<int, int, Matrix>>& generators);

SubBasis radical_subspace(const ModulePtr& M);

/* Materialize a subspace closed under the action as a module; inclusion
 * map returned through out_incl. */
ModulePtr sub_as_module(const ModulePtr& M, const SubBasis& S, GradedMap* out_incl = nullptr);

/* M/S with projection (and a section used internally). */
ModulePtr quotient_module(const ModulePtr& M, const SubBasis& S, GradedMap* out_proj = nullptr);

ModulePtr radical(const ModulePtr& M);
ModulePtr top(const ModulePtr& M);

/* --- homomorphisms --- */

/* Basis of the space of degree-s module maps M -> N. */
std::vector<GradedMap> hom_space(const ModulePtr& M, const ModulePtr& N, int s);

/* Kernel of a map as a subspace of its source. */
SubBasis kernel_subspace(const GradedMap& f);

/* --- projective covers --- */

struct ProjectiveCoverData {
    ProjSum P;
    GradedMap eps; // P -> M, degree 0, surjective, ker inside P*rad
    ProjectiveCoverData(ProjSum p, GradedMap e) : P(std::move(p)), eps(std::move(e)) {}
};

ProjectiveCoverData projective_cover(const ModulePtr& M);

/* --- graded isomorphism testing --- */

struct IsoResult {
    enum class Verdict { Iso, No, Unknown } verdict;
    std::optional<GradedMap> iso;
};

/* Deterministic exact search: dimension vectors first, then an integer
 * grid over the Hom_0 basis sized by the grid lemma so that emptiness of
 * the invertible locus is certified, with a small-schedule fallback and
 * Unknown over tiny fields when the grid would be too large. */
IsoResult is_isomorphic_graded(const ModulePtr& M, const ModulePtr& N);

} // namespace diagext

#endif
