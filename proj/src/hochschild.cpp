#include "diagext/hochschild.hpp"

#include <algorithm>

namespace diagext {

ModulePtr regular_bimodule(const AlgebraPtr& A, AlgebraPtr* out_env) {
    ModulePresentation mp;
    mp.kind = RegularBimodule{};
    ModulePtr B = from_presentation(mp, A);
    if (out_env) *out_env = B->algebra();
    return B;
}

HochschildData hochschild(const AlgebraPtr& A, int n_max) {
    HochschildData out;
    out.B = regular_bimodule(A, &out.E);
    out.RB = std::make_shared<Resolution>(out.B);
    out.table = std::make_shared<ExtTable>(*out.RB, n_max);
    for (int n = 0; n <= n_max; ++n) {
        out.dims.push_back(out.table->pair().dim(n));
        out.delta_dims.push_back(out.table->pair().dim_at(n, -n));
    }
    return out;
}

ExtAlgebraData ext_algebra_of_semisimple(const AlgebraPtr& A, int n_max) {
    ExtAlgebraData out;
    out.R0 = semisimple_module(A);
    out.RS = std::make_shared<Resolution>(out.R0);
    out.table = std::make_shared<ExtTable>(*out.RS, n_max);
    for (int n = 0; n <= n_max; ++n) {
        std::size_t total = out.table->pair().dim(n);
        out.dims.push_back(total);
        if (total != out.table->pair().dim_at(n, -n)) out.diagonal_concentrated = false;
    }
    return out;
}

namespace {

/* Drop every tensor term with a nontrivial left part: (e_v|q) -> q. */
RMatrix tensor_down(const AlgebraPtr& E, const RMatrix& D) {
    const GradedAlgebra& Env = *E;
    RMatrix out;
    out.degree = D.degree;
    for (const auto& s : D.row_summands)
        out.row_summands.push_back({Env.unpair_vertex(s.vertex).second, s.shift});
    for (const auto& s : D.col_summands)
        out.col_summands.push_back({Env.unpair_vertex(s.vertex).second, s.shift});
    out.e.assign(out.row_summands.size(), std::vector<RMatrixEntry>(out.col_summands.size()));
    for (std::size_t r = 0; r < D.e.size(); ++r)
        for (std::size_t c = 0; c < D.e[r].size(); ++c) {
            const RMatrixEntry& en = D.e[r][c];
            RMatrixEntry& o = out.e[r][c];
            o.deg = en.deg;
            if (en.is_zero()) continue;
            for (const auto& [idx, v] : en.coords) {
                const auto& t = Env.tensor_label(en.deg, idx);
                if (t.dp != 0) continue;
                SpRow one{{t.iq, v}};
                sp_axpy(Env.field(), o.coords, one, Env.field().one());
            }
        }
    return out;
}

} // namespace

TMap::TMap(const AlgebraPtr& A, int n_max) : n_max_(n_max) {
    hh_ = hochschild(A, n_max);
    es_ = ext_algebra_of_semisimple(A, n_max);

    const AlgebraPtr& E = hh_.E;
    hh_.RB->extend_to(n_max + 1);
    es_.RS->extend_to(n_max + 1);

    // tensored complex over the shared semisimple module
    std::vector<std::vector<ProjSummand>> stages;
    std::vector<RMatrix> diffs;
    for (int n = 0; n <= n_max + 1; ++n) {
        std::vector<ProjSummand> st;
        for (const auto& s : hh_.RB->P(n).summands())
            st.push_back({E->unpair_vertex(s.vertex).second, s.shift});
        stages.push_back(std::move(st));
        if (n >= 1) diffs.push_back(tensor_down(E, hh_.RB->differential(n)));
    }
    std::vector<Matrix> aug_rows;
    {
        const ProjSum& P0 = hh_.RB->P(0);
        auto imgs = generator_images(P0, hh_.RB->augmentation());
        const Field& F = A->field();
        for (std::size_t k = 0; k < P0.summands().size(); ++k) {
            auto [v, w] = E->unpair_vertex(P0.summands()[k].vertex);
            if (P0.summands()[k].shift != 0 || v != w)
                throw InternalError("bimodule cover is not generated by (v,v) pairs in degree 0");
            // component ((v,v), 0) of the bimodule is spanned by e_v
            Matrix row = Matrix::zero(F, 1, 1);
            row.set(0, 0, imgs[k].get(0, 0));
            aug_rows.push_back(std::move(row));
        }
    }
    tensored_ = std::make_shared<LiteralComplex>(es_.R0, stages, diffs, aug_rows);

    // minimality transfer: the tensored complex matches the Betti data
    for (int n = 0; n <= n_max; ++n) {
        if (tensored_->P(n).summands().size() != es_.RS->P(n).summands().size())
            throw InternalError("tensored resolution has different Betti numbers");
    }

    // comparison maps lifting the identity of R_0; isos by minimality
    comparison_.push_back(
        lift_through(es_.RS->P(0), tensored_->augmentation(), es_.RS->augmentation()));
    for (int n = 1; n <= n_max; ++n) {
        GradedMap rhs = es_.RS->differential_map(n).then(comparison_.back());
        comparison_.push_back(lift_through(es_.RS->P(n), tensored_->differential_map(n), rhs));
    }
    for (const auto& f : comparison_)
        if (!f.is_iso()) throw InternalError("comparison of minimal resolutions is not an iso");
}

ExtClass TMap::apply(const ExtClass& c) {
    const AlgebraPtr& E = hh_.E;
    const Field& F = es_.R0->field();
    const ProjSum& Pn = hh_.RB->P(c.n);
    std::vector<Matrix> trows;
    for (std::size_t k = 0; k < Pn.summands().size(); ++k) {
        auto [v, w] = E->unpair_vertex(Pn.summands()[k].vertex);
        int deg = Pn.summands()[k].shift + c.i;
        std::size_t tdim = es_.R0->dim(w, deg);
        Matrix row = Matrix::zero(F, 1, tdim);
        if (tdim == 1 && deg == 0 && v == w) {
            // degree-0 coefficient of the representative entry
            Scalar val = c.rows[k].cols() == 1 ? c.rows[k].get(0, 0) : F.zero();
            row.set(0, 0, val);
        }
        trows.push_back(std::move(row));
    }
    GradedMap teta = map_from_generator_images(tensored_->P(c.n), es_.R0, c.i, trows);
    GradedMap comp = comparison_.at(c.n).then(teta);
    std::vector<Matrix> rows = generator_images(es_.RS->P(c.n), comp);
    return es_.table->pair().class_from_rows(c.n, c.i, std::move(rows));
}

GradedCenter graded_center(ExtTable& T, int bound) {
    const Field& F = T.pair().M()->field();
    GradedCenter Z;
    Z.bound = bound;
    for (int n = 0; n <= bound; ++n) {
        const auto& keys = T.basis(n);
        std::size_t r = keys.size();
        std::vector<ExtElement> basis;
        if (r > 0) {
            // unknown u = sum c_k keys[k]; conditions against all v with
            // |v| >= 1 and n + |v| <= n_max
            std::size_t eqcols = 0;
            // one equation block per test element v and result coordinate
            std::map<std::tuple<int, std::size_t, int, std::size_t>, std::size_t> colof;
            auto col_of = [&](int m, std::size_t vpos, int ii, std::size_t kk) {
                auto key = std::make_tuple(m, vpos, ii, kk);
                auto it = colof.find(key);
                if (it != colof.end()) return it->second;
                colof[key] = eqcols;
                return eqcols++;
            };
            std::vector<std::vector<std::pair<std::size_t, Scalar>>> rows_per_unknown(r);
            for (int m = 1; n + m <= T.n_max(); ++m) {
                const auto& vs = T.basis(m);
                for (std::size_t vpos = 0; vpos < vs.size(); ++vpos) {
                    const auto& v = vs[vpos];
                    // sign (-1)^{n m}
                    bool neg = (n % 2) && (m % 2);
                    for (std::size_t k = 0; k < r; ++k) {
                        const auto& u = keys[k];
                        SpRow uv = T.product(u, v);
                        SpRow vu = T.product(v, u);
                        SpRow cond = uv;
                        sp_axpy(F, cond, vu, neg ? F.one() : F.neg(F.one()));
                        for (const auto& [idx, val] : cond) {
                            std::size_t col = col_of(m, vpos, u.i + v.i, idx);
                            rows_per_unknown[k].push_back({col, val});
                        }
                    }
                }
            }
            Matrix sys = Matrix::zero(F, r, eqcols);
            for (std::size_t k = 0; k < r; ++k)
                for (const auto& [col, val] : rows_per_unknown[k])
                    sys.add_to(k, col, val);
            Matrix cen = row_space_basis(left_kernel_rows(sys));
            for (std::size_t t = 0; t < cen.rows(); ++t) {
                ExtElement e;
                for (const auto& [k, v] : cen.row(t)) {
                    auto key = std::make_pair(keys[k].n, keys[k].i);
                    SpRow cur;
                    auto it = e.parts.find(key);
                    if (it != e.parts.end()) cur = it->second;
                    sp_axpy(F, cur, SpRow{{keys[k].k, v}}, F.one());
                    e.parts[key] = std::move(cur);
                }
                basis.push_back(std::move(e));
            }
        }
        Z.dims.push_back(basis.size());
        Z.basis.push_back(std::move(basis));
    }
    return Z;
}

GrCentReport verify_gr_cent(const AlgebraPtr& A, int n_max, bool throw_on_failure) {
    TMap T(A, n_max + 1);
    ExtTable& ES = *T.es().table;
    if (!T.es().diagonal_concentrated)
        throw InternalError("E_R is not concentrated on the diagonal; not Koszul?");
    GradedCenter Z = graded_center(ES, n_max);

    GrCentReport rep;
    rep.n_max = n_max;
    rep.pass = true;
    const Field& F = A->field();
    for (int n = 0; n <= n_max; ++n) {
        std::size_t dd = T.hh().table->pair().dim_at(n, -n);
        std::size_t zd = Z.dims[n];
        rep.delta_dims.push_back(dd);
        rep.center_dims.push_back(zd);

        // matrix of T on the diagonal slice, in E_R^n coordinates
        std::vector<SpRow> imgs;
        std::size_t ecols = ES.dim(n);
        for (std::size_t k = 0; k < dd; ++k) {
            ExtClass c = T.hh().table->pair().basis_class(n, -n, k);
            ExtClass tc = T.apply(c);
            // E_R of a Koszul algebra is diagonal: coords at (n, -n)
            imgs.push_back(tc.coords);
        }
        Matrix timg = sp_rows_to_matrix(F, imgs, ecols);
        std::size_t trank = rank(timg);
        rep.t_ranks.push_back(trank);

        // image inside the center slice
        std::vector<SpRow> zrows;
        for (const auto& e : Z.basis[n]) {
            SpRow flatz;
            for (const auto& [key, coords] : e.parts)
                if (key.first == n) flatz = coords; // E_R slices unique per n
            zrows.push_back(flatz);
        }
        Matrix zmat = sp_rows_to_matrix(F, zrows, ecols);
        bool inside = true;
        for (std::size_t k2 = 0; k2 < timg.rows(); ++k2)
            if (!in_row_space(zmat, timg.row_matrix(k2))) inside = false;

        bool ok = dd == zd && trank == dd && inside;
        rep.per_degree.push_back(ok);
        if (!ok) {
            rep.pass = false;
            if (throw_on_failure)
                throw InternalError("VerificationFailed(degree " + std::to_string(n) + ")");
        }
    }
    return rep;
}

std::optional<CenterWitness> find_non_nilpotent_center(ExtTable& T, const GradedCenter& Z,
                                                       int degree_bound, int power_bound) {
    std::vector<std::pair<int, ExtElement>> candidates;
    for (int n = 1; n <= degree_bound && n < static_cast<int>(Z.basis.size()); ++n)
        for (const auto& e : Z.basis[n]) candidates.push_back({n, e});
    // also sums of pairs in the same degree
    std::size_t singles = candidates.size();
    for (std::size_t a = 0; a < singles; ++a)
        for (std::size_t b = a + 1; b < singles; ++b)
            if (candidates[a].first == candidates[b].first)
                candidates.push_back(
                    {candidates[a].first, T.add(candidates[a].second, candidates[b].second)});

    for (const auto& [deg, e] : candidates) {
        ExtElement p = e;
        int k = 1;
        bool died = false;
        while (k < power_bound && (k + 1) * deg <= T.n_max()) {
            p = T.mul(p, e);
            ++k;
            if (p.is_zero()) {
                died = true;
                break;
            }
        }
        if (!died && k >= 2) {
            CenterWitness w;
            w.element = e;
            w.degree = deg;
            w.powers_checked = k;
            return w;
        }
    }
    return std::nullopt;
}

} // namespace diagext
