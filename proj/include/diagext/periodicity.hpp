#ifndef DIAGEXT_PERIODICITY_HPP
#define DIAGEXT_PERIODICITY_HPP

#include <optional>
#include <string>

#include "diagext/extalg.hpp"

namespace diagext {

/* Splitting data of a degree-0 map between projectives generated in one
 * degree whose matrix has entries in R_0: P = Ker (+) P', Q = Im (+) Q'. */
struct SplitR0 {
    std::size_t ker = 0;   // summands of Ker
    std::size_t rank = 0;  // summands of Im
    std::size_t coker = 0; // summands of Coker
    bool mono = false, epi = false, iso = false;
};

/* Throws ShapeError("EntriesNotInR0...") if an entry leaves R_0, and if
 * the two sides are not generated in single degrees. */
SplitR0 split_r0_map(const AlgebraPtr& A, const RMatrix& g);

/* Per-stage flags of a lift chain of a diagonal class, with the
 * propagation laws asserted (violating them means a bug, not bad input):
 * mono at j forces mono at j+k; under the no-projective-summand
 * hypothesis, epi at j forces epi at every earlier stage. */
struct ChainAnalysis {
    std::vector<RMatrix> lifts;
    std::vector<SplitR0> splits;
    std::vector<bool> mono, epi, iso, nonzero;
    int first_mono = -1, first_epi = -1, first_iso = -1;
};

ChainAnalysis analyze_chain(ExtPair& P, const ExtClass& c, int window,
                            bool assert_mono_forward = true, bool assert_epi_backward = false);

struct PeriodicityVerdict {
    enum class Kind { Periodic, EventuallyPeriodic, NotDetected, Unknown } kind =
        Kind::NotDetected;
    int period = 0;
    int onset = 0; // EventuallyPeriodic: Omega^{onset+period} = Omega^{onset}(-period)
    int window = 0;
    std::string detail;
    bool lifting_evidence = false; // strategy (a) fired
    bool direct_evidence = false;  // strategy (b) fired
};

/* Graded periodicity: period n means Omega^n M = M(-n). Strategy (a)
 * scans diagonal classes for mono/iso lifts; strategy (b) tests syzygy
 * isomorphisms directly. Positive verdicts from both must agree. */
PeriodicityVerdict detect_periodicity(Resolution& R, int n_max, int window);

/* End(M)_0 local <=> quotient by nilpotents is one-dimensional; exact
 * when the trace-form radical is nilpotent, Unknown otherwise. */
enum class LocalVerdict { Yes, No, Unknown };
LocalVerdict end0_is_local(const ModulePtr& M);

/* Ext^1(S_v, R) = 0 for every vertex. */
bool is_selfinjective(const AlgebraPtr& A);

/* Split pairing test: some cover summand of X splits off. */
bool has_projective_summand(const ModulePtr& X);
bool syzygies_have_no_projective_summands(Resolution& R, int window);

struct Cx1Report {
    bool delta_nonzero = false;
    int delta_degree = -1;
    bool eventually_periodic = false;
    PeriodicityVerdict verdict;
    bool agree = false;
};

/* Betti numbers all 1 over the window: eventual periodicity is
 * equivalent to a nonzero diagonal class in positive degree. */
Cx1Report cx1_criterion(Resolution& R, int n_max, int window);

/* beta_i(M) = 1 and a diagonal class in degree n < i with nonzero lifts
 * up to stage i - n forces eventual periodicity. */
PeriodicityVerdict betti1_shortcut(Resolution& R, int i, int n, int window);

struct BettiComparison {
    int i, n, m;
    int concluded_betti; // beta_{m-i}(N), verified to be 1
    std::vector<bool> epi_flags; // liftings l^0..l^n of eta are all epi
};

/* Prop-style Betti comparison: eta in Delta^i(M,N), theta in Ext^n(N,L)
 * with theta*eta != 0, beta_m(M) = beta_n(N) = 1, i <= m < n+i; then
 * beta_{m-i}(N) = 1, certified by a surjectivity chain. */
BettiComparison compare_betti(Resolution& RM, Resolution& RN, Resolution& RL, int i, int n,
                              int m, int window);

struct SimpleSyzygyReport {
    struct PerSimple {
        int vertex = 0;
        std::vector<int> betti;
        int simple_syzygy_at = -1; // n with Omega^n S = T(-n), T simple
        int syzygy_vertex = -1;
        int period = -1; // least n with Omega^n S = S(-n) in the window
    };
    std::vector<PerSimple> simples;
    bool all_periodic = false;
    bool common_period = false;
    int period = -1;
    int vertex_count = 0;
    bool betti_all_one = false;
    bool quiver_cyclic_j2 = false;
    bool selfinjective = false;
};

/* Per-simple syzygy analysis; hypotheses (indecomposable algebra,
 * infinite projective dimension, no projective syzygy summands, Betti 1
 * at least twice) are verified over the window, HypothesisError
 * otherwise. In the selfinjective Koszul all-simples-periodic case the
 * classification consequences are asserted. */
SimpleSyzygyReport simple_syzygy_analysis(const AlgebraPtr& A, int window);

} // namespace diagext

#endif
