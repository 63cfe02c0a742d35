#include "diagext/extalg.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace diagext {

namespace {

/* Reduce a flat row against RREF rows. */
Matrix reduce_against(const Matrix& rref, const Matrix& row) {
    const Field& F = row.field();
    Matrix v = row;
    for (std::size_t r = 0; r < rref.rows(); ++r) {
        const auto& rr = rref.row(r);
        if (rr.empty()) continue;
        Scalar c = v.get(0, rr.front().first);
        if (c.is_zero()) continue;
        for (const auto& [j, w] : rr) v.set(0, j, F.sub(v.get(0, j), F.mul(c, w)));
    }
    return v;
}

} // namespace

std::size_t ExtPair::ambient_dim(int n, int i) {
    const ProjSum& P = RM_->P(n);
    const ModulePtr& N = RN_->module();
    std::size_t t = 0;
    for (const auto& s : P.summands()) t += N->dim(s.vertex, s.shift + i);
    return t;
}

std::vector<std::size_t> ExtPair::ambient_offsets(int n, int i) {
    const ProjSum& P = RM_->P(n);
    const ModulePtr& N = RN_->module();
    std::vector<std::size_t> off;
    std::size_t t = 0;
    for (const auto& s : P.summands()) {
        off.push_back(t);
        t += N->dim(s.vertex, s.shift + i);
    }
    off.push_back(t);
    return off;
}

std::vector<int> ExtPair::candidate_degrees(int n) {
    RM_->extend_to(n);
    const ProjSum& P = RM_->P(n);
    const ModulePtr& N = RN_->module();
    std::vector<int> out;
    if (P.summands().empty() || N->is_zero()) return out;
    int gmin = P.summands()[0].shift, gmax = gmin;
    for (const auto& s : P.summands()) {
        gmin = std::min(gmin, s.shift);
        gmax = std::max(gmax, s.shift);
    }
    for (int i = N->lo() - gmax; i <= N->hi() - gmin; ++i)
        if (ambient_dim(n, i) > 0) out.push_back(i);
    return out;
}

Matrix ExtPair::rows_to_flat(int n, int i, const std::vector<Matrix>& rows) {
    const Field& F = N()->field();
    auto off = ambient_offsets(n, i);
    Matrix flat = Matrix::zero(F, 1, off.back());
    const ProjSum& P = RM_->P(n);
    if (rows.size() != P.summands().size()) throw ShapeError("ext rows count");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k].rows() != 1 || rows[k].cols() != off[k + 1] - off[k])
            throw ShapeError("ext row shape");
        for (const auto& [c, v] : rows[k].row(0)) flat.set(0, off[k] + c, v);
    }
    return flat;
}

std::vector<Matrix> ExtPair::flat_to_rows(int n, int i, const Matrix& flat) {
    const Field& F = N()->field();
    auto off = ambient_offsets(n, i);
    std::vector<Matrix> rows;
    for (std::size_t k = 0; k + 1 < off.size(); ++k) {
        Matrix r = Matrix::zero(F, 1, off[k + 1] - off[k]);
        for (std::size_t c = off[k]; c < off[k + 1]; ++c) {
            Scalar v = flat.get(0, c);
            if (!v.is_zero()) r.set(0, c - off[k], v);
        }
        rows.push_back(std::move(r));
    }
    return rows;
}

Matrix ExtPair::precompose(int n, int i) {
    // right-compose with d^{n+1}: Hom(P^n, N)_i -> Hom(P^{n+1}, N)_i
    RM_->extend_to(n + 1);
    const Field& F = N()->field();
    const RMatrix& D = RM_->differential(n + 1);
    const ProjSum& Pn = RM_->P(n);
    auto offFrom = ambient_offsets(n, i);
    auto offTo = ambient_offsets(n + 1, i);
    Matrix T = Matrix::zero(F, offFrom.back(), offTo.back());
    const ModulePtr& Nm = RN_->module();
    for (std::size_t k = 0; k < D.row_summands.size(); ++k) {
        const ProjSummand& sk = Pn.summands()[k];
        for (std::size_t j = 0; j < D.col_summands.size(); ++j) {
            const RMatrixEntry& en = D.e[k][j];
            if (en.is_zero()) continue;
            Matrix act = Nm->act_coords(en.deg, en.coords, sk.vertex, sk.shift + i);
            for (std::size_t r = 0; r < act.rows(); ++r)
                for (const auto& [c, v] : act.row(r)) T.set(offFrom[k] + r, offTo[j] + c, v);
        }
    }
    return T;
}

const ExtSlice& ExtPair::slice(int n, int i) {
    auto it = slices_.find({n, i});
    if (it != slices_.end()) return it->second;

    RM_->extend_to(n + 1);
    const Field& F = N()->field();
    std::size_t amb = ambient_dim(n, i);

    Matrix Z = Matrix::zero(F, 0, amb);
    Matrix B = Matrix::zero(F, 0, amb);
    if (amb > 0) {
        Matrix T = precompose(n, i);
        Z = row_space_basis(left_kernel_rows(T));
        if (n > 0) {
            Matrix Tp = precompose(n - 1, i);
            B = row_space_basis(Tp);
        }
    }
    // deterministic complement of B inside Z
    std::vector<SpRow> repRows;
    for (std::size_t r = 0; r < Z.rows(); ++r) {
        Matrix red = reduce_against(B, Z.row_matrix(r));
        // also reduce against already accepted reps
        Matrix acc = sp_rows_to_matrix(F, repRows, amb);
        red = reduce_against(row_space_basis(acc), red);
        if (!red.is_zero()) repRows.push_back(red.row(0));
    }
    Matrix reps = row_space_basis(sp_rows_to_matrix(F, repRows, amb));

    ExtSlice s(std::move(Z), std::move(B), std::move(reps));
    s.ambient = amb;
    s.offsets = ambient_offsets(n, i);
    for (std::size_t r = 0; r < s.reps.rows(); ++r)
        s.rep_pivots.push_back(s.reps.row(r).front().first);
    auto [pos, ok] = slices_.emplace(std::make_pair(n, i), std::move(s));
    (void)ok;
    return pos->second;
}

std::size_t ExtPair::dim(int n) {
    std::size_t t = 0;
    for (int i : candidate_degrees(n)) t += dim_at(n, i);
    return t;
}

ExtClass ExtPair::basis_class(int n, int i, std::size_t k) {
    const ExtSlice& s = slice(n, i);
    ExtClass c;
    c.n = n;
    c.i = i;
    c.rows = flat_to_rows(n, i, s.reps.row_matrix(k));
    c.coords = {{k, N()->field().one()}};
    return c;
}

ExtClass ExtPair::class_from_rows(int n, int i, std::vector<Matrix> rows) {
    const ExtSlice& s = slice(n, i);
    Matrix flat = rows_to_flat(n, i, rows);
    // cocycle check: annihilated by precomposition with d^{n+1}
    if (s.ambient > 0) {
        Matrix T = precompose(n, i);
        if (!(flat * T).is_zero()) throw InternalError("class_from_rows: not a cocycle");
    }
    Matrix red = reduce_against(s.coboundaries, flat);
    SpRow coords;
    for (std::size_t r = 0; r < s.reps.rows(); ++r) {
        Scalar c = red.get(0, s.rep_pivots[r]);
        if (!c.is_zero()) coords.push_back({r, c});
    }
    // consistency: red must equal coords . reps
    Matrix check = red;
    for (const auto& [r, c] : coords)
        check = check - s.reps.row_matrix(r).scaled(c);
    if (!check.is_zero()) throw InternalError("class_from_rows: reduction failed");
    ExtClass out;
    out.n = n;
    out.i = i;
    out.rows = std::move(rows);
    out.coords = std::move(coords);
    return out;
}

GradedMap ExtPair::rep_map(const ExtClass& c) {
    return map_from_generator_images(RM_->P(c.n), RN_->module(), c.i, c.rows);
}

ExtClass ExtPair::identity() {
    if (M().get() != N().get()) throw NotComposableError("identity needs M == N");
    RM_->extend_to(0);
    std::vector<Matrix> rows = generator_images(RM_->P(0), RM_->augmentation());
    return class_from_rows(0, 0, std::move(rows));
}

std::vector<GradedMap> ExtPair::lift_chain(const ExtClass& c, int steps, unsigned perturb_seed) {
    RM_->extend_to(c.n + steps);
    RN_->extend_to(steps);

    std::string key;
    if (perturb_seed == 0) {
        std::ostringstream os;
        os << c.n << "|" << c.i;
        for (const auto& [k, v] : c.coords) os << "|" << k << ":" << v.str();
        key = os.str();
        auto it = chain_cache_.find(key);
        if (it != chain_cache_.end() && static_cast<int>(it->second.size()) > steps)
            return std::vector<GradedMap>(it->second.begin(), it->second.begin() + steps + 1);
    }

    std::mt19937 rng(perturb_seed);
    const Field& F = N()->field();

    std::vector<GradedMap> chain;
    if (perturb_seed == 0) {
        auto it = chain_cache_.find(key);
        if (it != chain_cache_.end()) chain = it->second; // extend incrementally
    }

    auto perturb = [&](GradedMap lift, int stage) -> GradedMap {
        if (perturb_seed == 0) return lift;
        // add a random map P_M^{n+stage} -> P_N^{stage} that dies in the
        // next target: rows from the kernel of the stage map
        const ProjSum& Z = RM_->P(c.n + stage);
        const GradedMap& onto = stage == 0 ? RN_->augmentation() : RN_->differential_map(stage);
        std::uniform_int_distribution<int> coin(-2, 2);
        std::vector<Matrix> rows;
        for (std::size_t k = 0; k < Z.summands().size(); ++k) {
            const ProjSummand& s = Z.summands()[k];
            std::size_t xdim = onto.src()->dim(s.vertex, s.shift + c.i);
            Matrix row = Matrix::zero(F, 1, xdim);
            if (xdim) {
                Matrix ob = onto.block(s.vertex, s.shift + c.i);
                Matrix ker = row_space_basis(left_kernel_rows(ob));
                for (std::size_t r = 0; r < ker.rows(); ++r) {
                    long cc = coin(rng);
                    if (cc) row = row + ker.row_matrix(r).scaled(F.from_long(cc));
                }
            }
            rows.push_back(std::move(row));
        }
        GradedMap h = map_from_generator_images(Z, onto.src(), c.i, rows);
        return lift.plus(h, F.one());
    };

    if (chain.empty()) {
        GradedMap eta = rep_map(c);
        chain.push_back(perturb(lift_through(RM_->P(c.n), RN_->augmentation(), eta), 0));
    }
    while (static_cast<int>(chain.size()) <= steps) {
        int j = static_cast<int>(chain.size());
        GradedMap rhs = RM_->differential_map(c.n + j).then(chain.back());
        chain.push_back(perturb(lift_through(RM_->P(c.n + j), RN_->differential_map(j), rhs), j));
    }
    if (perturb_seed == 0) chain_cache_[key] = chain;
    return std::vector<GradedMap>(chain.begin(), chain.begin() + steps + 1);
}

ExtClass yoneda(ExtPair& NL, ExtPair& MN, ExtPair& ML, const ExtClass& xi, const ExtClass& eta,
                unsigned perturb_seed) {
    if (MN.N().get() != NL.M().get())
        throw NotComposableError("yoneda: target of eta is not the source of xi");
    if (ML.M().get() != MN.M().get() || ML.N().get() != NL.N().get())
        throw NotComposableError("yoneda: result pair mismatch");
    if (xi.is_zero() || eta.is_zero()) {
        ExtClass z;
        z.n = xi.n + eta.n;
        z.i = xi.i + eta.i;
        const ExtSlice& s = ML.slice(z.n, z.i);
        (void)s;
        std::vector<Matrix> rows;
        auto off = ML.flat_to_rows(z.n, z.i,
                                   Matrix::zero(ML.N()->field(), 1, ML.slice(z.n, z.i).ambient));
        z.rows = off;
        return z;
    }
    auto chain = MN.lift_chain(eta, xi.n, perturb_seed);
    GradedMap ximap = NL.rep_map(xi);
    GradedMap comp = chain[xi.n].then(ximap);
    ML.resM().extend_to(eta.n + xi.n);
    std::vector<Matrix> rows = generator_images(ML.resM().P(eta.n + xi.n), comp);
    return ML.class_from_rows(eta.n + xi.n, eta.i + xi.i, std::move(rows));
}

/* --- ExtTable --- */

ExtTable::ExtTable(Resolution& R, int n_max) : R_(R), pair_(R, R), n_max_(n_max) {
    R_.extend_to(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        std::vector<Key> keys;
        for (int i : pair_.candidate_degrees(n))
            for (std::size_t k = 0; k < pair_.dim_at(n, i); ++k) keys.push_back({n, i, k});
        basis_[n] = std::move(keys);
    }
}

const SpRow& ExtTable::product(const Key& a, const Key& b) {
    auto it = products_.find({a, b});
    if (it != products_.end()) return it->second;
    if (a.n + b.n > n_max_)
        throw TruncationError("ext product beyond table bound");
    ExtClass ca = pair_.basis_class(a.n, a.i, a.k);
    ExtClass cb = pair_.basis_class(b.n, b.i, b.k);
    ExtClass prod = yoneda(pair_, pair_, pair_, ca, cb);
    auto [pos, ok] = products_.emplace(std::make_pair(a, b), prod.coords);
    (void)ok;
    return pos->second;
}

ExtElement ExtTable::element_of(const ExtClass& c) const {
    ExtElement e;
    if (!c.coords.empty()) e.parts[{c.n, c.i}] = c.coords;
    return e;
}

ExtElement ExtTable::from_key(const Key& k, const Scalar& coeff) {
    ExtElement e;
    if (!coeff.is_zero()) e.parts[{k.n, k.i}] = {{k.k, coeff}};
    return e;
}

ExtElement ExtTable::add(const ExtElement& a, const ExtElement& b) const {
    const Field& F = R_.module()->field();
    ExtElement out = a;
    for (const auto& [key, coords] : b.parts) {
        SpRow cur;
        auto it = out.parts.find(key);
        if (it != out.parts.end()) cur = it->second;
        sp_axpy(F, cur, coords, F.one());
        if (cur.empty()) out.parts.erase(key);
        else out.parts[key] = std::move(cur);
    }
    return out;
}

ExtElement ExtTable::scale(const ExtElement& a, const Scalar& c) const {
    const Field& F = R_.module()->field();
    ExtElement out;
    if (c.is_zero()) return out;
    for (const auto& [key, coords] : a.parts) out.parts[key] = sp_scaled(F, coords, c);
    return out;
}

ExtElement ExtTable::mul(const ExtElement& a, const ExtElement& b) {
    const Field& F = R_.module()->field();
    ExtElement out;
    for (const auto& [ka, ca] : a.parts)
        for (const auto& [kb, cb] : b.parts) {
            if (ka.first + kb.first > n_max_)
                throw TruncationError("ext product beyond table bound");
            for (const auto& [ia, va] : ca)
                for (const auto& [ib, vb] : cb) {
                    Key A{ka.first, ka.second, ia};
                    Key B{kb.first, kb.second, ib};
                    const SpRow& p = product(A, B);
                    if (p.empty()) continue;
                    auto key = std::make_pair(ka.first + kb.first, ka.second + kb.second);
                    SpRow cur;
                    auto it = out.parts.find(key);
                    if (it != out.parts.end()) cur = it->second;
                    sp_axpy(F, cur, p, F.mul(va, vb));
                    if (cur.empty()) out.parts.erase(key);
                    else out.parts[key] = std::move(cur);
                }
        }
    return out;
}

ExtElement ExtTable::one() { return element_of(pair_.identity()); }

std::map<std::pair<int, int>, SpRow> ExtTable::slice_of(const ExtElement& e, int n) const {
    std::map<std::pair<int, int>, SpRow> out;
    for (const auto& [key, coords] : e.parts)
        if (key.first == n) out[key] = coords;
    return out;
}

/* --- diagonal subalgebra --- */

DiagonalTable diagonal_subalgebra(ExtTable& T, int n_max) {
    DiagonalTable D;
    D.n_max = n_max;
    for (int n = 0; n <= n_max; ++n) D.dims.push_back(T.pair().dim_at(n, -n));
    for (int n1 = 0; n1 <= n_max; ++n1)
        for (int n2 = 0; n1 + n2 <= n_max; ++n2)
            for (std::size_t k1 = 0; k1 < D.dims[n1]; ++k1)
                for (std::size_t k2 = 0; k2 < D.dims[n2]; ++k2) {
                    ExtTable::Key a{n1, -n1, k1}, b{n2, -n2, k2};
                    D.products[{a, b}] = T.product(a, b);
                }
    return D;
}

std::pair<ExtElement, ExtElement> decompose(ExtTable& T, const ExtElement& c) {
    // the split is only meaningful for linear modules
    LinearityCheck lc = is_linear_up_to(T.pair().resM(), T.n_max());
    if (!lc.linear)
        throw NotLinearError("decompose requires a linear module (fails at stage " +
                             std::to_string(lc.first_failure) + ")");
    ExtElement delta, nu;
    for (const auto& [key, coords] : c.parts) {
        if (key.second == -key.first) delta.parts[key] = coords;
        else nu.parts[key] = coords;
    }
    return {delta, nu};
}

std::optional<int> nilpotency_index(ExtTable& T, const ExtElement& c, int bound) {
    ExtElement p = c;
    for (int k = 1; k <= bound; ++k) {
        if (p.is_zero()) return k == 1 ? 1 : k;
        if (k == bound) break;
        p = T.mul(p, c);
    }
    if (p.is_zero()) return bound;
    return std::nullopt;
}

bool nonvanishing_by_image(ExtPair& P, int n, int i, const std::vector<Matrix>& rows) {
    if (n < 1) return false;
    LinearityCheck lc = is_linear_up_to(P.resM(), n);
    if (!lc.linear) return false;
    if (i != -n) return false; // image inside N*rad, no certificate
    for (const auto& r : rows)
        if (!r.is_zero()) return true;
    return false;
}

} // namespace diagext
