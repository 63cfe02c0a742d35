#ifndef DIAGEXT_EXTALG_HPP
#define DIAGEXT_EXTALG_HPP

#include <map>
#include <optional>
#include <vector>

#include "diagext/resolution.hpp"

namespace diagext {

/* A bigraded Ext class at (homological degree n, internal degree i),
 * represented by the generator images of a cocycle P_M^n -> N: rows[k]
 * is the image of the k-th generator, a row in N at (v_k, d_k + i). */
struct ExtClass {
    int n = 0;
    int i = 0;
    std::vector<Matrix> rows;
    SpRow coords; // in the slice basis; empty = zero class
    bool is_zero() const { return coords.empty(); }
};

/* Formal sum of classes across bidegrees, coordinates per slice. */
struct ExtElement {
    std::map<std::pair<int, int>, SpRow> parts; // (n,i) -> slice coords
    bool is_zero() const { return parts.empty(); }
};

/* One bigraded slice: cocycles, coboundaries and a deterministic
 * complement inside Hom(P^n, N)_i. */
struct ExtSlice {
    std::size_t ambient = 0;
    std::vector<std::size_t> offsets; // per summand of P^n
    Matrix cocycles, coboundaries, reps;
    std::vector<std::size_t> rep_pivots;
    std::size_t dim() const { return reps.rows(); }
    ExtSlice(Matrix z, Matrix b, Matrix r)
        : cocycles(std::move(z)), coboundaries(std::move(b)), reps(std::move(r)) {}
};

/* Ext^*(M, N) machinery bound to resolutions of M and N. The N-side
 * resolution is needed for lift chains (and hence products). */
class ExtPair {
public:
    ExtPair(Resolution& RM, Resolution& RN) : RM_(&RM), RN_(&RN) {}

    Resolution& resM() { return *RM_; }
    Resolution& resN() { return *RN_; }
    const ModulePtr& M() const { return RM_->module(); }
    const ModulePtr& N() const { return RN_->module(); }

    /* Internal degrees where Hom(P^n, N)_i can be nonzero. */
    std::vector<int> candidate_degrees(int n);

    const ExtSlice& slice(int n, int i);
    std::size_t dim_at(int n, int i) { return slice(n, i).dim(); }
    std::size_t dim(int n);

    ExtClass basis_class(int n, int i, std::size_t k);
    /* Reduce a cocycle given by generator images; throws InternalError
     * if the rows are not a cocycle. */
    ExtClass class_from_rows(int n, int i, std::vector<Matrix> rows);

    /* The representative as a degree-i map P^n -> N. */
    GradedMap rep_map(const ExtClass& c);

    /* Identity class of End(M); requires M == N. */
    ExtClass identity();

    /* Lift chain l^0..l^steps of a class; l^j : P_M^{n+j} -> P_N^j.
     * perturb_seed != 0 re-randomizes each lift inside its solution
     * space (products must not depend on this). */
    std::vector<GradedMap> lift_chain(const ExtClass& c, int steps, unsigned perturb_seed = 0);

    /* Flat ambient coordinates of Hom(P^n, N)_i. */
    Matrix rows_to_flat(int n, int i, const std::vector<Matrix>& rows);
    std::vector<Matrix> flat_to_rows(int n, int i, const Matrix& flat);

private:
    Matrix precompose(int n, int i); // ambient(n,i) -> ambient(n+1,i), right-compose d^{n+1}
    std::size_t ambient_dim(int n, int i);
    std::vector<std::size_t> ambient_offsets(int n, int i);

    Resolution* RM_;
    Resolution* RN_;
    std::map<std::pair<int, int>, ExtSlice> slices_;
    std::map<std::string, std::vector<GradedMap>> chain_cache_;
};

/* Yoneda product xi * eta: first eta in Ext^n(M,N)_i, then xi in
 * Ext^m(N,L)_j; the result lives in Ext^{m+n}(M,L)_{i+j}. The pairs must
 * share resolutions. Throws NotComposable on module mismatch. */
ExtClass yoneda(ExtPair& NL, ExtPair& MN, ExtPair& ML, const ExtClass& xi, const ExtClass& eta,
                unsigned perturb_seed = 0);

/* Ext^*(M,M) with cached products of basis classes. */
class ExtTable {
public:
    struct Key {
        int n;
        int i;
        std::size_t k;
        bool operator<(const Key& o) const {
            return std::tie(n, i, k) < std::tie(o.n, o.i, o.k);
        }
    };

    ExtTable(Resolution& R, int n_max);

    ExtPair& pair() { return pair_; }
    int n_max() const { return n_max_; }

    const std::vector<Key>& basis(int n) const { return basis_.at(n); }
    std::size_t dim(int n) const { return basis_.at(n).size(); }

    /* coords of basis_a * basis_b in slice (a.n+b.n, a.i+b.i) */
    const SpRow& product(const Key& a, const Key& b);

    ExtElement element_of(const ExtClass& c) const;
    ExtElement from_key(const Key& k, const Scalar& coeff);
    ExtElement add(const ExtElement& a, const ExtElement& b) const;
    ExtElement scale(const ExtElement& a, const Scalar& c) const;
    ExtElement mul(const ExtElement& a, const ExtElement& b);
    ExtElement one();

    /* nonzero coords of an element restricted to hom degree n */
    std::map<std::pair<int, int>, SpRow> slice_of(const ExtElement& e, int n) const;

private:
    Resolution& R_;
    ExtPair pair_;
    int n_max_;
    std::map<int, std::vector<Key>> basis_;
    std::map<std::pair<Key, Key>, SpRow> products_;
};

/* --- diagonal subalgebra and the radical-image ideal --- */

struct DiagonalTable {
    int n_max = 0;
    std::vector<std::size_t> dims; // dim Delta^n, n = 0..n_max
    /* products of diagonal basis classes, coords inside Delta slices */
    std::map<std::pair<ExtTable::Key, ExtTable::Key>, SpRow> products;
    bool closed = true; // products stayed on the diagonal (always true by bigrading)
};

DiagonalTable diagonal_subalgebra(ExtTable& T, int n_max);

/* Split an element into its diagonal part (i == -n) and the rest. */
std::pair<ExtElement, ExtElement> decompose(ExtTable& T, const ExtElement& c);

/* Least k <= bound with c^k = 0; nullopt if no power vanishes. */
std::optional<int> nilpotency_index(ExtTable& T, const ExtElement& c, int bound);

/* im(eta) not inside N*rad certifies eta != 0 in Ext (linear modules,
 * n >= 1): true iff i == -n and some generator image is nonzero. */
bool nonvanishing_by_image(ExtPair& P, int n, int i, const std::vector<Matrix>& rows);

} // namespace diagext

#endif
