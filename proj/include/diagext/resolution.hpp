#ifndef DIAGEXT_RESOLUTION_HPP
#define DIAGEXT_RESOLUTION_HPP

#include <optional>
#include <vector>

#include "diagext/gmodule.hpp"

namespace diagext {

/* Entry of a matrix over R: homogeneous element of e_{v_row} R_d e_{v_col},
 * zero when coords is empty. */
struct RMatrixEntry {
    int deg = 0;
    SpRow coords;
    bool is_zero() const { return coords.empty(); }
};

/* Matrix over R presenting a degree-s map between projective sums; the
 * map sends gen_c to sum_r gen_r * e[r][c]. */
struct RMatrix {
    std::vector<ProjSummand> row_summands; // target
    std::vector<ProjSummand> col_summands; // source
    int degree = 0;
    std::vector<std::vector<RMatrixEntry>> e;

    bool is_zero() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero()) return false;
        return true;
    }
    /* every nonzero entry has degree >= 1 */
    bool entries_in_radical() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero() && x.deg < 1) return false;
        return true;
    }
    bool entries_in_r1() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero() && x.deg != 1) return false;
        return true;
    }
    bool entries_in_r0() const {
        for (const auto& row : e)
            for (const auto& x : row)
                if (!x.is_zero() && x.deg != 0) return false;
        return true;
    }
};

RMatrix rmatrix_from_map(const ProjSum& src, const ProjSum& tgt, const GradedMap& f);
GradedMap map_from_rmatrix(const ProjSum& src, const ProjSum& tgt, const RMatrix& D);
/* composite "first F then G" of F: P->Q, G: Q->T, as matrices over R */
RMatrix rmatrix_compose(const AlgebraPtr& A, const RMatrix& F, const RMatrix& G);

std::string rmatrix_str(const AlgebraPtr& A, const RMatrix& D);

/* Lift f: Z.module -> Y through onto: X -> Y: a module map g with
 * g;onto = f, solved on the generators of the projective Z and extended
 * linearly. Throws InternalError("LiftingFailed...") when some
 * generator image is not in the image of onto. */
GradedMap lift_through(const ProjSum& Z, const GradedMap& onto, const GradedMap& f);

/* Minimal graded projective resolution, extended stage by stage.
 *
 *   ... -> P^1 -> P^0 -> M -> 0
 *
 * Stage data: cover projection pi_n : P^n ->> Omega^n, inclusion
 * iota_n : Omega^n -> P^{n-1}, differential d^n = pi_n ; iota_n. */
class Resolution {
public:
    explicit Resolution(ModulePtr M);

    const ModulePtr& module() const { return M_; }
    const AlgebraPtr& algebra() const { return M_->algebra(); }

    /* Extend so that P^0..P^N are computed. */
    void extend_to(int N);
    int computed() const { return static_cast<int>(stages_.size()) - 1; }

    const ProjSum& P(int n) const { return stages_.at(n).cover; }
    /* the augmentation P^0 -> M */
    const GradedMap& augmentation() const { return stages_.at(0).pi; }
    /* cover projection P^n ->> Omega^n */
    const GradedMap& pi(int n) const { return stages_.at(n).pi; }
    /* d^n : P^n -> P^{n-1}, n >= 1 */
    const GradedMap& differential_map(int n) const { return *stages_.at(n).d_map; }
    const RMatrix& differential(int n) const { return *stages_.at(n).d_rmx; }

    /* Omega^k materialized (Omega^0 = M); embeddings retained. */
    const ModulePtr& syzygy(int k) const {
        return k == 0 ? M_ : stages_.at(k - 1).next_syzygy;
    }
    /* iota_k : Omega^k -> P^{k-1}, k >= 1 */
    const GradedMap& syzygy_inclusion(int k) const { return stages_.at(k - 1).next_incl; }

    int betti(int n) const { return static_cast<int>(stages_.at(n).cover.summands().size()); }
    std::vector<int> generator_degrees(int n) const { return stages_.at(n).cover.generator_degrees(); }

private:
    struct Stage {
        ProjSum cover;            // P^n
        GradedMap pi;             // P^n ->> Omega^n
        ModulePtr next_syzygy;    // Omega^{n+1}
        GradedMap next_incl;      // Omega^{n+1} -> P^n
        std::optional<GradedMap> d_map;
        std::optional<RMatrix> d_rmx;
        Stage(ProjSum c, GradedMap p, ModulePtr s, GradedMap i)
            : cover(std::move(c)), pi(std::move(p)), next_syzygy(std::move(s)),
              next_incl(std::move(i)) {}
    };

    void push_stage(const ModulePtr& target, const GradedMap* incl_into_prev);
    void check_window(int N) const;

    ModulePtr M_;
    std::vector<Stage> stages_;
};

struct BettiProfile {
    std::vector<int> betti;
    bool all_ones = false;
    bool window_bounded = false; // heuristic: no new maximum in the last two stages
    int window = 0;
};

struct LinearityCheck {
    bool linear = true;
    int first_failure = -1;
};

/* generator_degrees[n] == {n,...,n} for n <= N */
LinearityCheck is_linear_up_to(Resolution& res, int N);

BettiProfile betti_profile(Resolution& res, int N);

/* d^n ; d^{n+1} = 0, minimality, exactness — sanity sweep used by tests
 * and by assemble-from-matrices validation. */
void verify_resolution(Resolution& res, int N);

/* Comparison maps phi_n : A.P(n) -> B.P(n) over an iso f : A.module ->
 * B.module (degree 0); for minimal resolutions all phi_n are isos. */
std::vector<GradedMap> chain_compare(Resolution& A, Resolution& B, const GradedMap& f, int N);

/* A hand-specified complex of projectives over M: P^n with differentials
 * given as matrices over R. Validates d^2 = 0, minimality and exactness
 * against a freshly computed resolution, then exposes the stages. */
class LiteralComplex {
public:
    /* aug_rows[k]: image in M of the k-th generator of the 0-th stage. */
    LiteralComplex(ModulePtr M, std::vector<std::vector<ProjSummand>> stages,
                   std::vector<RMatrix> diffs, std::vector<Matrix> aug_rows);

    int length() const { return static_cast<int>(covers_.size()) - 1; }
    const ProjSum& P(int n) const { return covers_.at(n); }
    const GradedMap& augmentation() const { return aug_; }
    const RMatrix& differential(int n) const { return diffs_.at(n - 1); }
    const GradedMap& differential_map(int n) const { return dmaps_.at(n - 1); }

    /* checks d^2 = 0, entries in the radical, and exactness */
    void validate() const;

private:
    ModulePtr M_;
    std::vector<ProjSum> covers_;
    std::vector<RMatrix> diffs_;
    std::vector<GradedMap> dmaps_;
    GradedMap aug_;
};

ModulePtr semisimple_module(const AlgebraPtr& A); // R_0 = (+)_v S_v

} // namespace diagext

#endif
