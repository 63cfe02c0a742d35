#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diagext/resolution.hpp"

using namespace diagext;

namespace {

const char* QS_SRC =
    "field GF(5)\nunit q = 2\nvertex v\narrow x: v -> v\narrow y: v -> v\n"
    "relation x*y - q*y*x\nrelation x*x\nrelation y*y\n";
const char* QXY_SRC =
    "field Q\nunit q = 2\nvertex v\narrow x: v -> v\narrow y: v -> v\n"
    "relation x*y - q*y*x\nrelation x*x\nrelation y*y\n";
const char* A2_SRC =
    "field Q\nvertex v1 v2 v3\narrow a1: v1 -> v2\narrow a2: v2 -> v3\narrow a3: v3 -> v1\n"
    "relation a1*a2\nrelation a2*a3\nrelation a3*a1\n";

AlgebraPtr mk(const char* src, int depth = 8) {
    return GradedAlgebra::materialize(parse_algebra(src), depth);
}

ModulePtr mkmod(const AlgebraPtr& A, const char* alg_src, const char* mod_src) {
    return from_presentation(parse_module(mod_src, parse_algebra(alg_src)), A);
}

} // namespace

TEST_CASE("string module resolution: constant Betti number 2 and shifts of one matrix") {
    auto A = mk(QS_SRC);
    auto M = mkmod(A, QS_SRC, "module cokernel [[-y, 0], [x, q*y]]");
    Resolution res(M);
    res.extend_to(5);
    verify_resolution(res, 5);

    for (int n = 0; n <= 5; ++n) {
        CHECK(res.betti(n) == 2);
        std::vector<int> gd = res.generator_degrees(n);
        CHECK(gd == std::vector<int>{n, n});
    }
    CHECK(is_linear_up_to(res, 5).linear);
    for (int n = 1; n <= 5; ++n) CHECK(res.differential(n).entries_in_r1());

    for (int n = 1; n <= 3; ++n) {
        auto r = is_isomorphic_graded(res.syzygy(n), shift_module(M, -n));
        CHECK(r.verdict == IsoResult::Verdict::Iso);
    }
}

TEST_CASE("the displayed string-module resolution validates and is isomorphic to the computed one") {
    auto A = mk(QS_SRC);
    const Field& F = A->field();
    auto M = mkmod(A, QS_SRC, "module cokernel [[-y, 0], [x, q*y]]");

    const int N = 4;
    std::vector<std::vector<ProjSummand>> stages;
    std::vector<RMatrix> diffs;
    for (int n = 0; n <= N; ++n) stages.push_back({{0, n}, {0, n}});
    for (int n = 1; n <= N; ++n) {
        RMatrix D;
        D.row_summands = stages[n - 1];
        D.col_summands = stages[n];
        D.degree = 0;
        D.e.assign(2, std::vector<RMatrixEntry>(2));
        D.e[0][0] = {1, {{1, F.from_long(-1)}}};          // -y
        D.e[1][0] = {1, {{0, F.one()}}};                  // x
        D.e[1][1] = {1, {{1, F.from_long(2)}}};           // q*y
        diffs.push_back(std::move(D));
    }
    std::vector<Matrix> aug_rows;
    for (int k = 0; k < 2; ++k) {
        Matrix r = Matrix::zero(F, 1, 2);
        r.set(0, k, F.one());
        aug_rows.push_back(r); // generators map to t1, t2
    }
    LiteralComplex lit(M, stages, diffs, aug_rows);
    // d^2 = 0, minimality, exactness all hold by construction check
    lit.validate();

    Resolution computed(M);
    computed.extend_to(N);
    for (int n = 0; n <= N; ++n) {
        CHECK(computed.betti(n) == 2);
    }
}

TEST_CASE("coker(x+y): rank-one linear resolution with syzygy parameter -1/q") {
    auto A = mk(QXY_SRC);
    const Field& F = A->field();
    auto M = mkmod(A, QXY_SRC, "module cokernel [[x+y]]");
    CHECK(M->total_dim() == 2);

    Resolution res(M);
    res.extend_to(4);
    verify_resolution(res, 4);
    for (int n = 0; n <= 4; ++n) CHECK(res.betti(n) == 1);
    CHECK(is_linear_up_to(res, 4).linear);

    // d^1 = (x + y); d^2 = (-2x + y) ~ x + (-1/q) y; d^3 = (4x + y)
    const RMatrix& d1 = res.differential(1);
    CHECK(d1.e[0][0].coords == SpRow{{0, F.one()}, {1, F.one()}});
    const RMatrix& d2 = res.differential(2);
    CHECK(d2.e[0][0].coords == SpRow{{0, F.one()}, {1, F.from_fraction(-1, 2)}});
    const RMatrix& d3 = res.differential(3);
    CHECK(d3.e[0][0].coords == SpRow{{0, F.one()}, {1, F.from_fraction(1, 4)}});

    // Omega^1 M = coker(x + (-1/q) y)(-1), and not coker(x+y)(-1) for generic q
    auto Mnext = mkmod(A, QXY_SRC, "module cokernel [[x - 1/2*y]]");
    CHECK(is_isomorphic_graded(res.syzygy(1), shift_module(Mnext, -1)).verdict ==
          IsoResult::Verdict::Iso);
    CHECK(is_isomorphic_graded(res.syzygy(1), shift_module(M, -1)).verdict ==
          IsoResult::Verdict::No);
}

TEST_CASE("resolution of a projective stops") {
    auto A = mk(QS_SRC);
    auto R = regular_module(A);
    Resolution res(R);
    res.extend_to(3);
    CHECK(res.betti(0) == 1); // local algebra: R = e R
    CHECK(res.betti(1) == 0);
    CHECK(res.betti(2) == 0);
    CHECK(res.syzygy(1)->is_zero());
}

TEST_CASE("simples over the 3-vertex cycle with J^2: syzygies walk the cycle") {
    auto A = mk(A2_SRC);
    auto S1 = simple_module(A, 0);
    Resolution res(S1);
    res.extend_to(6);
    verify_resolution(res, 6);
    for (int n = 0; n <= 6; ++n) CHECK(res.betti(n) == 1);
    CHECK(is_linear_up_to(res, 6).linear);

    // Omega^1 S_1 = S_2(-1), cyclically; period = vertex count 3
    auto S2 = simple_module(A, 1);
    CHECK(is_isomorphic_graded(res.syzygy(1), shift_module(S2, -1)).verdict ==
          IsoResult::Verdict::Iso);
    CHECK(is_isomorphic_graded(res.syzygy(3), shift_module(S1, -3)).verdict ==
          IsoResult::Verdict::Iso);
    CHECK(is_isomorphic_graded(res.syzygy(1), shift_module(S1, -1)).verdict ==
          IsoResult::Verdict::No);
}

TEST_CASE("direct sum with a shifted copy is not linear at stage 0") {
    auto A = mk(QS_SRC);
    auto M = mkmod(A, QS_SRC, "module cokernel [[-y, 0], [x, q*y]]");
    auto MM = direct_sum(M, shift_module(M, -1));
    Resolution res(MM);
    auto lc = is_linear_up_to(res, 2);
    CHECK_FALSE(lc.linear);
    CHECK(lc.first_failure == 0);
}

TEST_CASE("betti profile flags") {
    auto A = mk(QXY_SRC);
    auto M = mkmod(A, QXY_SRC, "module cokernel [[x+y]]");
    Resolution res(M);
    auto bp = betti_profile(res, 5);
    CHECK(bp.all_ones);
    CHECK(bp.window_bounded);

    auto S = semisimple_module(A); // Betti grow linearly: not all ones
    Resolution res2(S);
    auto bp2 = betti_profile(res2, 5);
    CHECK_FALSE(bp2.all_ones);
    CHECK(bp2.betti == std::vector<int>{1, 2, 3, 4, 5, 6});
    CHECK_FALSE(bp2.window_bounded);
}

TEST_CASE("koszul witness") {
    auto A = mk(QS_SRC);
    auto rep = koszul_witness(A, 4);
    CHECK(rep.linear);
    CHECK(rep.betti == std::vector<int>{1, 2, 3, 4, 5});

    auto A2 = mk(A2_SRC);
    auto rep2 = koszul_witness(A2, 5);
    CHECK(rep2.linear);
    CHECK(rep2.betti == std::vector<int>{3, 3, 3, 3, 3, 3});

    auto Apoly = mk("field Q\nvertex v\narrow x: v -> v\ntruncate 6\n", 6);
    auto rep3 = koszul_witness(Apoly, 6);
    CHECK(rep3.linear);
    CHECK_THROWS_AS(koszul_witness(Apoly, 7), TruncationError);
}

TEST_CASE("chain comparison between two minimal resolutions is an isomorphism") {
    auto A = mk(QS_SRC);
    auto M = mkmod(A, QS_SRC, "module cokernel [[-y, 0], [x, q*y]]");
    Resolution r1(M);
    Resolution r2(M);
    r1.extend_to(3);
    r2.extend_to(3);
    GradedMap idm(M, M, 0);
    for (const auto& [k, n] : M->data().dims)
        idm.set_block(k.first, k.second, Matrix::identity(M->field(), n));
    auto phis = chain_compare(r1, r2, idm, 3);
    for (const auto& f : phis) {
        CHECK(f.is_iso());
        CHECK(f.is_linear());
    }
}
