#include "diagext/resolution.hpp"

#include <algorithm>

namespace diagext {

RMatrix rmatrix_from_map(const ProjSum& src, const ProjSum& tgt, const GradedMap& f) {
    const GradedAlgebra& A = *src.algebra();
    RMatrix D;
    D.row_summands = tgt.summands();
    D.col_summands = src.summands();
    D.degree = f.degree();
    D.e.assign(D.row_summands.size(), std::vector<RMatrixEntry>(D.col_summands.size()));
    for (std::size_t c = 0; c < D.col_summands.size(); ++c) {
        const ProjSummand& sc = D.col_summands[c];
        int img_deg = sc.shift + f.degree();
        Matrix gen = src.generator_row(c);
        Matrix img = gen * f.block(sc.vertex, sc.shift);
        const auto& lab = tgt.labels(sc.vertex, img_deg);
        for (const auto& [pos, val] : img.row(0)) {
            auto [r, b] = lab[pos];
            RMatrixEntry& en = D.e[r][c];
            en.deg = img_deg - D.row_summands[r].shift;
            SpRow one{{b, val}};
            sp_axpy(A.field(), en.coords, one, A.field().one());
        }
    }
    return D;
}

GradedMap map_from_rmatrix(const ProjSum& src, const ProjSum& tgt, const RMatrix& D) {
    const GradedAlgebra& A = *src.algebra();
    const Field& F = A.field();
    GradedMap f(src.module(), tgt.module(), D.degree);
    const auto& dims = src.module()->data().dims;
    for (const auto& [key, n] : dims) {
        auto [v, i] = key;
        const auto& lab = src.labels(v, i);
        std::size_t ncols = tgt.module()->dim(v, i + D.degree);
        if (!ncols) continue;
        Matrix b = Matrix::zero(F, n, ncols);
        for (std::size_t r = 0; r < lab.size(); ++r) {
            auto [c, belem] = lab[r];
            int bdeg = i - src.summands()[c].shift;
            for (std::size_t t = 0; t < D.row_summands.size(); ++t) {
                const RMatrixEntry& en = D.e[t][c];
                if (en.is_zero()) continue;
                SpRow prod = A.mult_vec(en.deg, en.coords, bdeg, {{belem, F.one()}});
                for (const auto& [b2, val] : prod) {
                    std::size_t pos = tgt.position(t, b2, v, i + D.degree);
                    b.add_to(r, pos, val);
                }
            }
        }
        if (!b.is_zero()) f.set_block(v, i, std::move(b));
    }
    return f;
}

RMatrix rmatrix_compose(const AlgebraPtr& A, const RMatrix& F, const RMatrix& G) {
    // first F: P -> Q, then G: Q -> T
    if (F.row_summands.size() != G.col_summands.size())
        throw ShapeError("rmatrix composition shape");
    RMatrix out;
    out.row_summands = G.row_summands;
    out.col_summands = F.col_summands;
    out.degree = F.degree + G.degree;
    out.e.assign(out.row_summands.size(), std::vector<RMatrixEntry>(out.col_summands.size()));
    const Field& k = A->field();
    for (std::size_t t = 0; t < out.row_summands.size(); ++t)
        for (std::size_t c = 0; c < out.col_summands.size(); ++c) {
            RMatrixEntry& acc = out.e[t][c];
            acc.deg = out.col_summands[c].shift + out.degree - out.row_summands[t].shift;
            for (std::size_t r = 0; r < F.row_summands.size(); ++r) {
                const RMatrixEntry& g = G.e[t][r];
                const RMatrixEntry& f = F.e[r][c];
                if (g.is_zero() || f.is_zero()) continue;
                // gen_t * (g . f): g acts first on the generator
                SpRow prod = A->mult_vec(g.deg, g.coords, f.deg, f.coords);
                sp_axpy(k, acc.coords, prod, k.one());
            }
        }
    return out;
}

std::string rmatrix_str(const AlgebraPtr& A, const RMatrix& D) {
    std::string s;
    for (std::size_t r = 0; r < D.e.size(); ++r) {
        s += "[ ";
        for (std::size_t c = 0; c < D.e[r].size(); ++c) {
            const auto& en = D.e[r][c];
            if (en.is_zero()) {
                s += "0 ";
                continue;
            }
            std::string term;
            for (const auto& [b, v] : en.coords) {
                if (!term.empty()) term += "+";
                std::string name = A->basis(en.deg)[b].name;
                if (!(v == A->field().one())) term += v.str() + "*";
                term += name;
            }
            s += term + " ";
        }
        s += "]\n";
    }
    return s;
}

GradedMap lift_through(const ProjSum& Z, const GradedMap& onto, const GradedMap& f) {
    if (f.tgt().get() != onto.tgt().get()) throw ShapeError("lift_through targets differ");
    if (f.src().get() != Z.module().get()) throw ShapeError("lift_through source is not Z");
    int gdeg = f.degree() - onto.degree();
    std::vector<Matrix> rows;
    for (std::size_t k = 0; k < Z.summands().size(); ++k) {
        const ProjSummand& s = Z.summands()[k];
        Matrix frow = Z.generator_row(k) * f.block(s.vertex, s.shift);
        std::size_t xdim = onto.src()->dim(s.vertex, s.shift + gdeg);
        if (xdim == 0) {
            if (!frow.is_zero()) throw InternalError("LiftingFailed: empty fiber");
            rows.push_back(Matrix::zero(f.src()->field(), 1, 0));
            continue;
        }
        Matrix ob = onto.block(s.vertex, s.shift + gdeg);
        auto U = solve_left(ob, frow);
        if (!U) throw InternalError("LiftingFailed: generator image not in image");
        rows.push_back(std::move(*U));
    }
    return map_from_generator_images(Z, onto.src(), gdeg, rows);
}

/* --- Resolution --- */

Resolution::Resolution(ModulePtr M) : M_(std::move(M)) {}

void Resolution::check_window(int N) const {
    const GradedAlgebra& A = *M_->algebra();
    if (A.complete()) return;
    int need = N + std::max(M_->hi(), 0);
    if (A.max_degree() < need)
        throw TruncationError(
            "InsufficientTruncation: resolving to homological degree " + std::to_string(N) +
            " needs internal degree " + std::to_string(need) + ", materialized to " +
            std::to_string(A.max_degree()));
}

void Resolution::push_stage(const ModulePtr& target, const GradedMap* incl_into_prev) {
    ProjectiveCoverData cov = projective_cover(target);
    ModulePtr P = cov.P.module();
    GradedMap pi = cov.eps;

    // next syzygy; over a truncated algebra drop window-edge junk
    SubBasis K = kernel_subspace(pi);
    const GradedAlgebra& Alg = *M_->algebra();
    if (!Alg.complete()) {
        for (auto it = K.rows.begin(); it != K.rows.end();) {
            if (it->first.second > Alg.max_degree()) it = K.rows.erase(it);
            else ++it;
        }
    }
    GradedMap incl(nullptr, nullptr, 0);
    ModulePtr omega = sub_as_module(P, K, &incl);

    Stage st(std::move(cov.P), std::move(pi), std::move(omega), std::move(incl));
    if (incl_into_prev) {
        st.d_map = st.pi.then(*incl_into_prev);
        st.d_rmx = rmatrix_from_map(st.cover, stages_.back().cover, *st.d_map);
    }
    stages_.push_back(std::move(st));
}

void Resolution::extend_to(int N) {
    if (N <= computed()) return;
    check_window(N);
    if (stages_.empty()) push_stage(M_, nullptr);
    while (computed() < N) {
        const Stage& prev = stages_.back();
        push_stage(prev.next_syzygy, &prev.next_incl);
    }
}

/* --- checks --- */

LinearityCheck is_linear_up_to(Resolution& res, int N) {
    res.extend_to(N);
    LinearityCheck out;
    for (int n = 0; n <= N; ++n) {
        for (int d : res.generator_degrees(n))
            if (d != n) {
                out.linear = false;
                out.first_failure = n;
                return out;
            }
    }
    return out;
}

BettiProfile betti_profile(Resolution& res, int N) {
    res.extend_to(N);
    BettiProfile bp;
    bp.window = N;
    for (int n = 0; n <= N; ++n) bp.betti.push_back(res.betti(n));
    bp.all_ones = std::all_of(bp.betti.begin(), bp.betti.end(), [](int b) { return b == 1; });
    int maxAll = *std::max_element(bp.betti.begin(), bp.betti.end());
    int maxEarly = N >= 2 ? *std::max_element(bp.betti.begin(), bp.betti.end() - 2) : maxAll;
    bp.window_bounded = maxAll == maxEarly;
    return bp;
}

void verify_resolution(Resolution& res, int N) {
    res.extend_to(N);
    const AlgebraPtr& A = res.algebra();
    for (int n = 1; n <= N; ++n) {
        if (!res.differential(n).entries_in_radical())
            throw InternalError("resolution not minimal at stage " + std::to_string(n));
        if (n >= 2) {
            RMatrix dd = rmatrix_compose(A, res.differential(n), res.differential(n - 1));
            if (!dd.is_zero()) throw InternalError("d^2 != 0 at stage " + std::to_string(n));
        }
        // exactness: ker(d^n) = Omega^{n+1} dims, i.e. dim P^n = rank d + dim ker
        const GradedMap& pi = res.pi(n);
        if (!pi.is_epi()) throw InternalError("cover not surjective");
    }
    // Euler bookkeeping: rank(pi) + dim Omega^{n+1} = dim P^n per component
    for (int n = 0; n <= N; ++n) {
        const ModulePtr& Pm = res.P(n).module();
        const ModulePtr& s1 = res.syzygy(n + 1);
        for (const auto& [key, dim] : Pm->data().dims) {
            Matrix b = res.pi(n).block(key.first, key.second);
            std::size_t r = rank(b);
            std::size_t kdim = s1->dim(key.first, key.second);
            if (r + kdim != dim) throw InternalError("exactness bookkeeping failed");
        }
    }
}

std::vector<GradedMap> chain_compare(Resolution& A, Resolution& B, const GradedMap& f, int N) {
    A.extend_to(N);
    B.extend_to(N);
    std::vector<GradedMap> phis;
    GradedMap f0 = A.augmentation().then(f);
    phis.push_back(lift_through(A.P(0), B.augmentation(), f0));
    for (int n = 1; n <= N; ++n) {
        GradedMap rhs = A.differential_map(n).then(phis.back());
        phis.push_back(lift_through(A.P(n), B.differential_map(n), rhs));
    }
    return phis;
}

/* --- LiteralComplex --- */

LiteralComplex::LiteralComplex(ModulePtr M, std::vector<std::vector<ProjSummand>> stages,
                               std::vector<RMatrix> diffs, std::vector<Matrix> aug_rows)
    : M_(std::move(M)), diffs_(std::move(diffs)),
      aug_(GradedMap(nullptr, nullptr, 0)) {
    for (auto& s : stages) covers_.emplace_back(M_->algebra(), s);
    aug_ = map_from_generator_images(covers_.at(0), M_, 0, aug_rows);
    for (std::size_t n = 0; n + 1 < covers_.size(); ++n)
        dmaps_.push_back(map_from_rmatrix(covers_[n + 1], covers_[n], diffs_.at(n)));
    validate();
}

void LiteralComplex::validate() const {
    const AlgebraPtr& A = M_->algebra();
    // augmentation surjective, d^1 lands in its kernel, minimality, d^2 = 0
    if (!aug_.is_epi()) throw InternalError("literal complex: augmentation not onto");
    for (std::size_t n = 0; n < diffs_.size(); ++n) {
        if (!diffs_[n].entries_in_radical())
            throw InternalError("literal complex: differential not minimal");
        if (n + 1 < diffs_.size()) {
            RMatrix dd = rmatrix_compose(A, diffs_[n + 1], diffs_[n]);
            if (!dd.is_zero()) throw InternalError("literal complex: d^2 != 0");
        }
    }
    if (!dmaps_.empty() && !dmaps_[0].then(aug_).is_zero())
        throw InternalError("literal complex: aug . d^1 != 0");
    // exactness: at P^n, rank d^{n+1} = dim ker d^n (ker aug at n=0), blockwise
    for (std::size_t n = 0; n + 1 < covers_.size(); ++n) {
        const GradedMap& out = n == 0 ? aug_ : dmaps_[n - 1];
        const GradedMap& in = dmaps_[n];
        for (const auto& [key, dim] : covers_[n].module()->data().dims) {
            Matrix ob = out.block(key.first, key.second);
            Matrix ib = in.block(key.first, key.second - in.degree());
            // dim ker(out) = dim - rank(out); image of in has rank(ib)
            if (dim - rank(ob) != rank(ib))
                throw InternalError("literal complex: not exact at stage " + std::to_string(n));
        }
    }
}

ModulePtr semisimple_module(const AlgebraPtr& A) {
    GradedModule::Data d;
    d.A = A;
    d.lo = d.hi = 0;
    for (int v = 0; v < A->vertices(); ++v) d.dims[{v, 0}] = 1;
    return std::make_shared<GradedModule>(std::move(d));
}

} // namespace diagext
