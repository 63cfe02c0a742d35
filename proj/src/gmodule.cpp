#include "diagext/gmodule.hpp"

#include <algorithm>

namespace diagext {

namespace {

Matrix zero_m(const Field& F, std::size_t r, std::size_t c) { return Matrix::zero(F, r, c); }

/* Reduce a row vector modulo RREF rows; returns the reduced row. */
Matrix reduce_mod(const Matrix& rrefRows, const Matrix& row) {
    const Field& F = row.field();
    Matrix v = row;
    for (std::size_t r = 0; r < rrefRows.rows(); ++r) {
        const auto& rr = rrefRows.row(r);
        if (rr.empty()) continue;
        std::size_t p = rr.front().first;
        Scalar c = v.get(0, p);
        if (c.is_zero()) continue;
        for (const auto& [j, w] : rr) v.set(0, j, F.sub(v.get(0, j), F.mul(c, w)));
    }
    return v;
}

std::vector<std::size_t> pivot_cols_of(const Matrix& rrefRows) {
    std::vector<std::size_t> p;
    for (std::size_t r = 0; r < rrefRows.rows(); ++r)
        if (!rrefRows.row(r).empty()) p.push_back(rrefRows.row(r).front().first);
    return p;
}

} // namespace

Matrix GradedModule::action(int a, int i) const {
    const Arrow& ar = {"", 0, 0};
    (void)ar;
    int sv = d_.A->basis(1)[a].src, tv = d_.A->basis(1)[a].tgt;
    auto it = d_.action.find({a, i});
    if (it != d_.action.end()) return it->second;
    return zero_m(field(), dim(sv, i), dim(tv, i + 1));
}

Matrix GradedModule::act_elem(int d, std::size_t k, int i) const {
    const Field& F = field();
    const BasisElem& e = d_.A->basis(d)[k];
    if (d == 0) {
        std::size_t n = dim(e.src, i);
        return Matrix::identity(F, n);
    }
    if (d == 1) return action(static_cast<int>(k), i);
    Matrix acc = zero_m(F, dim(e.src, i), dim(e.tgt, i + d));
    for (const auto& [c, a, m] : d_.A->fact_left(d, k)) {
        Matrix part = action(static_cast<int>(a), i) * act_elem(d - 1, m, i + 1);
        acc = acc + part.scaled(c);
    }
    return acc;
}

Matrix GradedModule::act_coords(int d, const SpRow& coords, int src_vertex, int i) const {
    const Field& F = field();
    if (d == 0) {
        Matrix acc = zero_m(F, dim(src_vertex, i), dim(src_vertex, i));
        for (const auto& [k, c] : coords)
            if (static_cast<int>(k) == src_vertex) acc = acc + Matrix::identity(F, dim(src_vertex, i)).scaled(c);
        return acc;
    }
    // homogeneous coords share src/tgt
    int tgt_vertex = src_vertex;
    if (!coords.empty()) tgt_vertex = d_.A->basis(d)[coords.front().first].tgt;
    Matrix acc = zero_m(F, dim(src_vertex, i), dim(tgt_vertex, i + d));
    for (const auto& [k, c] : coords) acc = acc + act_elem(d, k, i).scaled(c);
    return acc;
}

void GradedModule::validate() const {
    const GradedAlgebra& A = *d_.A;
    if (!A.degree_available(2)) return;
    const Matrix& W = A.quadratic_relations();
    const auto& pairs = A.composable_pairs();
    for (std::size_t r = 0; r < W.rows(); ++r) {
        for (int i = d_.lo - 2; i <= d_.hi; ++i) {
            // sum c * act(a) * act(b) must vanish starting anywhere
            std::map<std::pair<int, int>, Matrix> acc;
            bool any = false;
            for (const auto& [p, c] : W.row(r)) {
                auto [a, b] = pairs[p];
                int sv = A.basis(1)[a].src;
                int tv = A.basis(1)[b].tgt;
                Matrix m = action(static_cast<int>(a), i) * action(static_cast<int>(b), i + 1);
                if (m.rows() == 0 || m.cols() == 0) continue;
                auto key = std::make_pair(sv, tv);
                auto it = acc.find(key);
                if (it == acc.end()) acc.emplace(key, m.scaled(c));
                else it->second = it->second + m.scaled(c);
                any = true;
            }
            if (!any) continue;
            for (const auto& [k, m] : acc)
                if (!m.is_zero())
                    throw ShapeError("module violates a quadratic relation of the algebra");
        }
    }
}

/* --- GradedMap --- */

Matrix GradedMap::block(int v, int i) const {
    auto it = blocks_.find({v, i});
    if (it != blocks_.end()) return it->second;
    return zero_m(src_->field(), src_->dim(v, i), tgt_->dim(v, i + degree_));
}

void GradedMap::set_block(int v, int i, Matrix m) {
    if (m.rows() != src_->dim(v, i) || m.cols() != tgt_->dim(v, i + degree_))
        throw ShapeError("map block shape");
    if (m.is_zero()) blocks_.erase({v, i});
    else blocks_.insert_or_assign({v, i}, std::move(m));
}

bool GradedMap::is_zero() const {
    for (const auto& [k, m] : blocks_)
        if (!m.is_zero()) return false;
    return true;
}

GradedMap GradedMap::then(const GradedMap& g) const {
    if (tgt_.get() != g.src().get()) throw ShapeError("composition of non-matching maps");
    GradedMap out(src_, g.tgt(), degree_ + g.degree());
    for (const auto& [k, m] : blocks_) {
        Matrix gb = g.block(k.first, k.second + degree_);
        if (gb.cols() == 0) continue;
        Matrix prod = m * gb;
        if (!prod.is_zero()) out.blocks_.insert_or_assign(k, std::move(prod));
    }
    return out;
}

GradedMap GradedMap::plus(const GradedMap& g, const Scalar& c) const {
    if (degree_ != g.degree_ || src_.get() != g.src_.get() || tgt_.get() != g.tgt_.get())
        throw ShapeError("sum of non-matching maps");
    GradedMap out = *this;
    for (const auto& [k, m] : g.blocks_) {
        Matrix cur = out.block(k.first, k.second);
        Matrix nm = cur + m.scaled(c);
        if (nm.is_zero()) out.blocks_.erase(k);
        else out.blocks_.insert_or_assign(k, std::move(nm));
    }
    return out;
}

GradedMap GradedMap::scaled(const Scalar& c) const {
    GradedMap out(src_, tgt_, degree_);
    if (c.is_zero()) return out;
    for (const auto& [k, m] : blocks_) out.blocks_.insert_or_assign(k, m.scaled(c));
    return out;
}

GradedMap GradedMap::shifted(int m) const {
    GradedMap out(shift_module(src_, m), shift_module(tgt_, m), degree_);
    for (const auto& [k, b] : blocks_) out.blocks_.insert_or_assign({k.first, k.second - m}, b);
    return out;
}

bool GradedMap::is_linear() const {
    const GradedAlgebra& A = *src_->algebra();
    for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
        int sv = A.basis(1)[a].src, tv = A.basis(1)[a].tgt;
        for (int i = src_->lo() - 1; i <= src_->hi() + 1; ++i) {
            std::size_t m0 = src_->dim(sv, i);
            std::size_t n1 = tgt_->dim(tv, i + 1 + degree_);
            if (m0 == 0 || n1 == 0) continue;
            Matrix lhs = block(sv, i) * tgt_->action(static_cast<int>(a), i + degree_);
            Matrix rhs = src_->action(static_cast<int>(a), i) * block(tv, i + 1);
            if (!(lhs == rhs)) return false;
        }
    }
    return true;
}

bool GradedMap::is_mono() const {
    for (const auto& [k, n] : src_->data().dims) {
        Matrix b = block(k.first, k.second);
        if (rank(b) < n) return false;
    }
    return true;
}

bool GradedMap::is_epi() const {
    for (const auto& [k, n] : tgt_->data().dims) {
        Matrix b = block(k.first, k.second - degree_);
        if (rank(b) < n) return false;
    }
    return true;
}

/* --- constructors --- */

ModulePtr zero_module(AlgebraPtr A) {
    GradedModule::Data d;
    d.A = std::move(A);
    d.lo = 0;
    d.hi = -1;
    return std::make_shared<GradedModule>(std::move(d));
}

ModulePtr simple_module(AlgebraPtr A, int v) {
    GradedModule::Data d;
    d.A = std::move(A);
    d.lo = d.hi = 0;
    d.dims[{v, 0}] = 1;
    d.labels[{v, 0}] = {"s"};
    return std::make_shared<GradedModule>(std::move(d));
}

ModulePtr shift_module(const ModulePtr& M, int m) {
    if (m == 0) return M;
    GradedModule::Data d;
    d.A = M->algebra();
    d.lo = M->lo() - m;
    d.hi = M->hi() - m;
    d.window_exact = M->window_exact();
    for (const auto& [k, n] : M->data().dims) d.dims[{k.first, k.second - m}] = n;
    for (const auto& [k, b] : M->data().action) d.action.insert_or_assign({k.first, k.second - m}, b);
    for (const auto& [k, l] : M->data().labels) d.labels[{k.first, k.second - m}] = l;
    return std::make_shared<GradedModule>(std::move(d));
}

ModulePtr direct_sum(const ModulePtr& M, const ModulePtr& N) {
    const Field& F = M->field();
    GradedModule::Data d;
    d.A = M->algebra();
    d.lo = std::min(M->lo(), N->lo());
    d.hi = std::max(M->hi(), N->hi());
    d.window_exact = M->window_exact() && N->window_exact();
    const GradedAlgebra& A = *M->algebra();
    for (int v = 0; v < A.vertices(); ++v)
        for (int i = d.lo; i <= d.hi; ++i) {
            std::size_t n = M->dim(v, i) + N->dim(v, i);
            if (n) d.dims[{v, i}] = n;
        }
    for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
        int sv = A.basis(1)[a].src, tv = A.basis(1)[a].tgt;
        for (int i = d.lo; i <= d.hi; ++i) {
            std::size_t r = M->dim(sv, i) + N->dim(sv, i);
            std::size_t c = M->dim(tv, i + 1) + N->dim(tv, i + 1);
            if (!r || !c) continue;
            Matrix b = zero_m(F, r, c);
            Matrix bm = M->action(static_cast<int>(a), i);
            Matrix bn = N->action(static_cast<int>(a), i);
            for (std::size_t x = 0; x < bm.rows(); ++x)
                for (const auto& [y, val] : bm.row(x)) b.set(x, y, val);
            for (std::size_t x = 0; x < bn.rows(); ++x)
                for (const auto& [y, val] : bn.row(x))
                    b.set(M->dim(sv, i) + x, M->dim(tv, i + 1) + y, val);
            if (!b.is_zero()) d.action.insert_or_assign({static_cast<int>(a), i}, std::move(b));
        }
    }
    return std::make_shared<GradedModule>(std::move(d));
}

ModulePtr from_representation(AlgebraPtr A, const RepresentationModule& rep) {
    GradedModule::Data d;
    d.A = A;
    bool first = true;
    for (const auto& [k, n] : rep.dims) {
        if (!n) continue;
        d.dims[k] = n;
        if (first) { d.lo = d.hi = k.second; first = false; }
        d.lo = std::min(d.lo, k.second);
        d.hi = std::max(d.hi, k.second);
    }
    if (first) { d.lo = 0; d.hi = -1; }
    for (const auto& [k, m] : rep.action) {
        auto [a, i] = k;
        int sv = A->basis(1)[a].src, tv = A->basis(1)[a].tgt;
        std::size_t r = d.dims.count({sv, i}) ? d.dims[{sv, i}] : 0;
        std::size_t c = d.dims.count({tv, i + 1}) ? d.dims[{tv, i + 1}] : 0;
        if (m.rows() != r || m.cols() != c)
            throw ParseError(ParseError::Kind::ShapeMismatch,
                             "representation action matrix has wrong shape");
        if (!m.is_zero()) d.action.insert_or_assign(k, m);
    }
    auto M = std::make_shared<GradedModule>(std::move(d));
    M->validate();
    return M;
}

/* --- ProjSum --- */

ProjSum::ProjSum(AlgebraPtr A, std::vector<ProjSummand> summands)
    : A_(std::move(A)), summands_(std::move(summands)) {
    const GradedAlgebra& Alg = *A_;
    GradedModule::Data d;
    d.A = A_;
    if (summands_.empty()) {
        d.lo = 0;
        d.hi = -1;
    } else {
        int lo = summands_[0].shift, hiShift = summands_[0].shift;
        for (const auto& s : summands_) {
            lo = std::min(lo, s.shift);
            hiShift = std::max(hiShift, s.shift);
        }
        int topd = Alg.max_degree();
        if (Alg.complete())
            while (topd > 0 && Alg.dim(topd) == 0) --topd;
        d.lo = lo;
        d.hi = hiShift + topd;
        d.window_exact = Alg.complete();
    }

    for (int i = d.lo; i <= d.hi; ++i) {
        for (int v = 0; v < Alg.vertices(); ++v) {
            std::vector<std::pair<std::size_t, std::size_t>> lab;
            std::vector<std::string> names;
            for (std::size_t k = 0; k < summands_.size(); ++k) {
                int bd = i - summands_[k].shift;
                if (bd < 0 || !Alg.degree_available(bd)) continue;
                const auto& bas = Alg.basis(bd);
                for (std::size_t b = 0; b < bas.size(); ++b) {
                    if (bas[b].src != summands_[k].vertex || bas[b].tgt != v) continue;
                    pos_[{k, b, i}] = lab.size();
                    lab.push_back({k, b});
                    names.push_back("g" + std::to_string(k) + "." + bas[b].name);
                }
            }
            if (!lab.empty()) {
                d.dims[{v, i}] = lab.size();
                d.labels[{v, i}] = std::move(names);
                labels_[{v, i}] = std::move(lab);
            }
        }
    }

    // arrow action: (k, b) -> (k, b*a)
    for (std::size_t a = 0; a < Alg.basis(1).size(); ++a) {
        int sv = Alg.basis(1)[a].src, tv = Alg.basis(1)[a].tgt;
        for (int i = d.lo; i <= d.hi; ++i) {
            auto its = labels_.find({sv, i});
            if (its == labels_.end()) continue;
            std::size_t rdim = its->second.size();
            std::size_t cdim = d.dims.count({tv, i + 1}) ? d.dims[{tv, i + 1}] : 0;
            if (!cdim) continue;
            Matrix m = zero_m(Alg.field(), rdim, cdim);
            for (std::size_t r = 0; r < rdim; ++r) {
                auto [k, b] = its->second[r];
                int bd = i - summands_[k].shift;
                for (const auto& [b2, c] : Alg.mult(bd, b, 1, a))
                    m.set(r, pos_.at({k, b2, i + 1}), c);
            }
            if (!m.is_zero()) d.action.insert_or_assign({static_cast<int>(a), i}, std::move(m));
        }
    }
    module_ = std::make_shared<GradedModule>(std::move(d));
}

const std::vector<std::pair<std::size_t, std::size_t>>& ProjSum::labels(int v, int i) const {
    static const std::vector<std::pair<std::size_t, std::size_t>> empty;
    auto it = labels_.find({v, i});
    return it == labels_.end() ? empty : it->second;
}

std::size_t ProjSum::position(std::size_t k, std::size_t b, int v, int i) const {
    (void)v;
    return pos_.at({k, b, i});
}

Matrix ProjSum::generator_row(std::size_t k) const {
    const ProjSummand& s = summands_.at(k);
    std::size_t n = module_->dim(s.vertex, s.shift);
    Matrix row = zero_m(A_->field(), 1, n);
    row.set(0, pos_.at({k, static_cast<std::size_t>(s.vertex), s.shift}), A_->field().one());
    return row;
}

ModulePtr regular_module(const AlgebraPtr& A, ProjSum* out_sum) {
    std::vector<ProjSummand> s;
    for (int v = 0; v < A->vertices(); ++v) s.push_back({v, 0});
    ProjSum P(A, std::move(s));
    ModulePtr m = P.module();
    if (out_sum) *out_sum = std::move(P);
    return m;
}

/* --- submodules / quotients --- */

SubBasis span_submodule(const ModulePtr& M,
                        const std::vector<std::tuple<int, int, Matrix>>& generators) {
    const GradedAlgebra& A = *M->algebra();
    std::map<std::pair<int, int>, std::vector<Matrix>> rows;
    for (const auto& [v, i, row] : generators) {
        if (row.cols() != M->dim(v, i)) throw ShapeError("generator shape");
        if (!row.is_zero()) rows[{v, i}].push_back(row);
    }
    SubBasis S;
    // sweep upward in degree; arrows only raise degree
    for (int i = M->lo(); i <= M->hi(); ++i) {
        for (int v = 0; v < A.vertices(); ++v) {
            auto it = rows.find({v, i});
            if (it == rows.end()) continue;
            Matrix stacked = it->second[0];
            for (std::size_t r = 1; r < it->second.size(); ++r)
                stacked = stacked.vstack(it->second[r]);
            Matrix basis = row_space_basis(stacked);
            if (basis.rows() == 0) continue;
            S.rows.insert_or_assign({v, i}, basis);
            for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
                if (A.basis(1)[a].src != v) continue;
                int tv = A.basis(1)[a].tgt;
                if (M->dim(tv, i + 1) == 0) continue;
                Matrix img = basis * M->action(static_cast<int>(a), i);
                if (!img.is_zero()) rows[{tv, i + 1}].push_back(img);
            }
        }
    }
    return S;
}

SubBasis radical_subspace(const ModulePtr& M) {
    const GradedAlgebra& A = *M->algebra();
    SubBasis S;
    for (int i = M->lo(); i <= M->hi(); ++i) {
        for (int v = 0; v < A.vertices(); ++v) {
            std::size_t n = M->dim(v, i);
            if (!n) continue;
            std::vector<Matrix> parts;
            for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
                if (A.basis(1)[a].tgt != v) continue;
                int sv = A.basis(1)[a].src;
                if (M->dim(sv, i - 1) == 0) continue;
                parts.push_back(M->action(static_cast<int>(a), i - 1));
            }
            if (parts.empty()) continue;
            Matrix stacked = parts[0];
            for (std::size_t r = 1; r < parts.size(); ++r) stacked = stacked.vstack(parts[r]);
            Matrix basis = row_space_basis(stacked);
            if (basis.rows()) S.rows.insert_or_assign({v, i}, basis);
        }
    }
    return S;
}

ModulePtr sub_as_module(const ModulePtr& M, const SubBasis& S, GradedMap* out_incl) {
    const GradedAlgebra& A = *M->algebra();
    GradedModule::Data d;
    d.A = M->algebra();
    d.window_exact = M->window_exact();
    bool first = true;
    for (const auto& [k, rows] : S.rows) {
        if (rows.rows() == 0) continue;
        d.dims[k] = rows.rows();
        if (first) { d.lo = d.hi = k.second; first = false; }
        d.lo = std::min(d.lo, k.second);
        d.hi = std::max(d.hi, k.second);
    }
    if (first) { d.lo = 0; d.hi = -1; }

    for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
        int sv = A.basis(1)[a].src, tv = A.basis(1)[a].tgt;
        for (int i = d.lo; i <= d.hi; ++i) {
            auto its = S.rows.find({sv, i});
            if (its == S.rows.end()) continue;
            Matrix img = its->second * M->action(static_cast<int>(a), i);
            auto itt = S.rows.find({tv, i + 1});
            if (itt == S.rows.end()) {
                if (!img.is_zero()) throw InternalError("subspace not closed under action");
                continue;
            }
            auto X = solve_left(itt->second, img);
            if (!X) throw InternalError("subspace not closed under action");
            if (!X->is_zero()) d.action.insert_or_assign({static_cast<int>(a), i}, std::move(*X));
        }
    }
    auto K = std::make_shared<GradedModule>(std::move(d));
    if (out_incl) {
        GradedMap incl(K, M, 0);
        for (const auto& [k, rows] : S.rows)
            if (rows.rows()) incl.set_block(k.first, k.second, rows);
        *out_incl = std::move(incl);
    }
    return K;
}

ModulePtr quotient_module(const ModulePtr& M, const SubBasis& S, GradedMap* out_proj) {
    const GradedAlgebra& A = *M->algebra();
    const Field& F = M->field();
    GradedModule::Data d;
    d.A = M->algebra();
    d.window_exact = M->window_exact();
    d.lo = M->lo();
    d.hi = M->hi();

    // per component: non-pivot coordinates survive
    std::map<std::pair<int, int>, std::vector<std::size_t>> keep; // M-coords kept
    std::map<std::pair<int, int>, Matrix> proj;                   // dim_M x dim_Q
    for (const auto& [k, n] : M->data().dims) {
        auto it = S.rows.find(k);
        Matrix rr = it == S.rows.end() ? zero_m(F, 0, n) : it->second;
        auto piv = pivot_cols_of(rr);
        std::vector<bool> is_piv(n, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::size_t> kp;
        for (std::size_t j = 0; j < n; ++j)
            if (!is_piv[j]) kp.push_back(j);
        if (kp.empty()) continue;
        d.dims[k] = kp.size();
        std::vector<std::string> names;
        for (auto j : kp) names.push_back(M->label(k.first, k.second, j));
        d.labels[k] = std::move(names);
        Matrix P(F, n, kp.size());
        for (std::size_t j = 0; j < n; ++j) {
            Matrix unit = zero_m(F, 1, n);
            unit.set(0, j, F.one());
            Matrix red = reduce_mod(rr, unit);
            for (std::size_t q = 0; q < kp.size(); ++q) {
                Scalar c = red.get(0, kp[q]);
                if (!c.is_zero()) P.set(j, q, c);
            }
        }
        keep.insert_or_assign(k, std::move(kp));
        proj.insert_or_assign(k, std::move(P));
    }

    // action: section (kept unit vectors) -> act -> project
    for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
        int sv = A.basis(1)[a].src, tv = A.basis(1)[a].tgt;
        for (int i = d.lo; i <= d.hi; ++i) {
            auto itk = keep.find({sv, i});
            auto itp = proj.find({tv, i + 1});
            if (itk == keep.end() || itp == proj.end()) continue;
            Matrix act = M->action(static_cast<int>(a), i);
            Matrix out = zero_m(F, itk->second.size(), itp->second.cols());
            for (std::size_t r = 0; r < itk->second.size(); ++r) {
                Matrix row = act.row_matrix(itk->second[r]);
                Matrix qrow = row * itp->second;
                for (const auto& [c, val] : qrow.row(0)) out.set(r, c, val);
            }
            if (!out.is_zero()) d.action.insert_or_assign({static_cast<int>(a), i}, std::move(out));
        }
    }

    auto Q = std::make_shared<GradedModule>(std::move(d));
    if (out_proj) {
        GradedMap pr(M, Q, 0);
        for (const auto& [k, P] : proj) pr.set_block(k.first, k.second, P);
        *out_proj = std::move(pr);
    }
    return Q;
}

ModulePtr radical(const ModulePtr& M) { return sub_as_module(M, radical_subspace(M)); }

ModulePtr top(const ModulePtr& M) { return quotient_module(M, radical_subspace(M)); }

/* --- hom spaces --- */

std::vector<GradedMap> hom_space(const ModulePtr& M, const ModulePtr& N, int s) {
    const GradedAlgebra& A = *M->algebra();
    if (M->algebra().get() != N->algebra().get())
        throw ShapeError("hom_space: modules over different algebras");
    const Field& F = M->field();

    // unknown blocks
    std::vector<std::pair<int, int>> keys; // (v, i)
    std::map<std::pair<int, int>, std::size_t> offset;
    std::size_t total = 0;
    for (const auto& [k, m] : M->data().dims) {
        std::size_t n = N->dim(k.first, k.second + s);
        if (!n) continue;
        keys.push_back(k);
        offset[k] = total;
        total += m * n;
    }

    auto unknown = [&](const std::pair<int, int>& k, std::size_t r, std::size_t c) {
        return offset.at(k) + r * N->dim(k.first, k.second + s) + c;
    };

    std::vector<SpRow> eqs;
    for (std::size_t a = 0; a < A.basis(1).size(); ++a) {
        int sv = A.basis(1)[a].src, tv = A.basis(1)[a].tgt;
        for (int i = M->lo() - 1; i <= M->hi(); ++i) {
            std::size_t m0 = M->dim(sv, i);
            std::size_t n1 = N->dim(tv, i + 1 + s);
            if (!m0 || !n1) continue;
            Matrix actN = N->action(static_cast<int>(a), i + s);
            Matrix actM = M->action(static_cast<int>(a), i);
            bool hasB0 = offset.count({sv, i});
            bool hasB1 = offset.count({tv, i + 1});
            for (std::size_t r = 0; r < m0; ++r)
                for (std::size_t c = 0; c < n1; ++c) {
                    SpRow eq;
                    if (hasB0)
                        for (std::size_t t = 0; t < N->dim(sv, i + s); ++t) {
                            Scalar co = actN.get(t, c);
                            if (!co.is_zero()) eq.push_back({unknown({sv, i}, r, t), co});
                        }
                    if (hasB1)
                        for (std::size_t u = 0; u < M->dim(tv, i + 1); ++u) {
                            Scalar co = actM.get(r, u);
                            if (!co.is_zero()) {
                                SpRow one{{unknown({tv, i + 1}, u, c), F.neg(co)}};
                                sp_axpy(F, eq, one, F.one());
                            }
                        }
                    if (!eq.empty()) {
                        std::sort(eq.begin(), eq.end(),
                                  [](const auto& x, const auto& y) { return x.first < y.first; });
                        // merge duplicates
                        SpRow merged;
                        for (auto& [idx, val] : eq) {
                            if (!merged.empty() && merged.back().first == idx)
                                merged.back().second = F.add(merged.back().second, val);
                            else merged.push_back({idx, val});
                        }
                        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                                    [](const auto& p) { return p.second.is_zero(); }),
                                     merged.end());
                        if (!merged.empty()) eqs.push_back(std::move(merged));
                    }
                }
        }
    }

    Matrix sys = sp_rows_to_matrix(F, eqs, total);
    Matrix K = kernel_basis(sys);
    std::vector<GradedMap> out;
    for (std::size_t c = 0; c < K.cols(); ++c) {
        GradedMap f(M, N, s);
        for (const auto& k : keys) {
            std::size_t m = M->dim(k.first, k.second);
            std::size_t n = N->dim(k.first, k.second + s);
            Matrix b = zero_m(F, m, n);
            bool nz = false;
            for (std::size_t r = 0; r < m; ++r)
                for (std::size_t cc = 0; cc < n; ++cc) {
                    Scalar v = K.get(unknown(k, r, cc), c);
                    if (!v.is_zero()) { b.set(r, cc, v); nz = true; }
                }
            if (nz) f.set_block(k.first, k.second, std::move(b));
        }
        out.push_back(std::move(f));
    }
    return out;
}

SubBasis kernel_subspace(const GradedMap& f) {
    SubBasis S;
    for (const auto& [k, n] : f.src()->data().dims) {
        Matrix b = f.block(k.first, k.second);
        Matrix ker = row_space_basis(left_kernel_rows(b));
        if (ker.rows()) S.rows.insert_or_assign(k, ker);
    }
    return S;
}

/* --- projective covers --- */

GradedMap map_from_generator_images(const ProjSum& P, const ModulePtr& N, int s,
                                    const std::vector<Matrix>& rows) {
    const Field& F = N->field();
    if (rows.size() != P.summands().size()) throw ShapeError("generator image count");
    GradedMap f(P.module(), N, s);
    for (const auto& [key, pdim] : P.module()->data().dims) {
        auto [w, i] = key;
        const auto& L = P.labels(w, i);
        std::size_t n = N->dim(w, i + s);
        if (!n) continue;
        Matrix b = zero_m(F, L.size(), n);
        for (std::size_t r = 0; r < L.size(); ++r) {
            auto [k, be] = L[r];
            int gd = P.summands()[k].shift;
            int ed = i - gd;
            Matrix act = N->act_elem(ed, be, gd + s);
            if (act.rows() == 0 || act.cols() == 0) continue;
            Matrix img = rows[k] * act;
            for (const auto& [c, val] : img.row(0)) b.set(r, c, val);
        }
        if (!b.is_zero()) f.set_block(w, i, std::move(b));
    }
    return f;
}

std::vector<Matrix> generator_images(const ProjSum& P, const GradedMap& f) {
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < P.summands().size(); ++k) {
        const ProjSummand& s = P.summands()[k];
        out.push_back(P.generator_row(k) * f.block(s.vertex, s.shift));
    }
    return out;
}

ProjectiveCoverData projective_cover(const ModulePtr& M) {
    const Field& F = M->field();
    SubBasis rad = radical_subspace(M);

    std::vector<ProjSummand> summands;
    std::vector<Matrix> gen_rows;
    for (const auto& [k, n] : M->data().dims) {
        auto it = rad.rows.find(k);
        Matrix rr = it == rad.rows.end() ? zero_m(F, 0, n) : it->second;
        auto piv = pivot_cols_of(rr);
        std::vector<bool> is_piv(n, false);
        for (auto p : piv) is_piv[p] = true;
        for (std::size_t j = 0; j < n; ++j)
            if (!is_piv[j]) {
                summands.push_back({k.first, k.second});
                Matrix row = zero_m(F, 1, n);
                row.set(0, j, F.one());
                gen_rows.push_back(std::move(row));
            }
    }

    ProjSum P(M->algebra(), std::move(summands));
    GradedMap eps = map_from_generator_images(P, M, 0, gen_rows);
    return ProjectiveCoverData(std::move(P), std::move(eps));
}

/* --- presentations --- */

namespace {

ModulePtr bind_cokernel(const CokernelModule& ck, const AlgebraPtr& A) {
    const Field& F = A->field();
    std::vector<ProjSummand> rows;
    for (std::size_t i = 0; i < ck.rows; ++i)
        rows.push_back({ck.row_vertices[i], ck.row_degrees[i]});
    ProjSum Fr(A, rows);

    std::vector<std::tuple<int, int, Matrix>> gens;
    for (std::size_t j = 0; j < ck.cols; ++j) {
        int deg = ck.col_degrees[j];
        int w = ck.col_vertices[j];
        std::size_t n = Fr.module()->dim(w, deg);
        Matrix row = Matrix::zero(F, 1, n == 0 ? 0 : n);
        bool nonzero = false;
        for (std::size_t i = 0; i < ck.rows; ++i) {
            for (const auto& t : ck.entries[i][j]) {
                int v = t.vertex;
                std::vector<int> arrows = t.arrows;
                if (arrows.empty()) {
                    if (v < 0) v = ck.row_vertices[i]; // scalar * identity
                    if (v != ck.row_vertices[i]) continue;
                }
                SpRow coords = A->path_coords(arrows, v);
                int len = static_cast<int>(arrows.size());
                for (const auto& [b, c] : coords) {
                    if (A->basis(len)[b].src != ck.row_vertices[i]) continue;
                    if (A->basis(len)[b].tgt != w) continue;
                    std::size_t p = Fr.position(i, b, w, ck.row_degrees[i] + len);
                    row.add_to(0, p, F.mul(t.coeff, c));
                    nonzero = true;
                }
            }
        }
        if (nonzero && n) gens.emplace_back(w, deg, row);
    }

    SubBasis S = span_submodule(Fr.module(), gens);
    return quotient_module(Fr.module(), S);
}

ModulePtr bind_regular_bimodule(const AlgebraPtr& A) {
    AlgebraPtr E = GradedAlgebra::enveloping(A);
    const GradedAlgebra& Alg = *A;
    const GradedAlgebra& Env = *E;
    const Field& F = Alg.field();

    GradedModule::Data d;
    d.A = E;
    d.lo = 0;
    int top = Alg.max_degree();
    if (Alg.complete())
        while (top > 0 && Alg.dim(top) == 0) --top;
    d.hi = top;
    d.window_exact = Alg.complete();

    // component at pair-vertex (v,w), degree i: basis elems of e_v R_i e_w
    std::map<std::tuple<int, int, std::size_t>, std::size_t> pos; // (pairv, i, Rbasis) -> coord
    for (int i = 0; i <= top; ++i) {
        const auto& bas = Alg.basis(i);
        for (std::size_t b = 0; b < bas.size(); ++b) {
            int pv = Env.pair_vertex(bas[b].src, bas[b].tgt);
            auto key = std::make_pair(pv, i);
            std::size_t& n = d.dims[key];
            pos[{pv, i, b}] = n;
            d.labels[key].push_back(bas[b].name);
            ++n;
        }
    }
    for (auto it = d.dims.begin(); it != d.dims.end();) {
        if (it->second == 0) it = d.dims.erase(it);
        else ++it;
    }

    // arrows of E are (a|e_w) [dp=1] and (e_v|b) [dq=1]
    for (std::size_t al = 0; al < Env.basis(1).size(); ++al) {
        const auto& t = Env.tensor_label(1, al);
        int esv = Env.basis(1)[al].src, etv = Env.basis(1)[al].tgt;
        for (int i = 0; i <= top; ++i) {
            auto sIt = d.dims.find({esv, i});
            auto tIt = d.dims.find({etv, i + 1});
            if (sIt == d.dims.end() || tIt == d.dims.end()) continue;
            Matrix m = Matrix::zero(F, sIt->second, tIt->second);
            const auto [sv, sw] = Env.unpair_vertex(esv);
            for (std::size_t b = 0; b < Alg.basis(i).size(); ++b) {
                const auto& be = Alg.basis(i)[b];
                if (be.src != sv || be.tgt != sw) continue;
                std::size_t r = pos.at({esv, i, b});
                SpRow img;
                if (t.dp == 1) {
                    // m*(a|e) = a*m, left multiplication
                    img = Alg.mult(1, t.ip, i, b);
                } else {
                    // m*(e|b') = m*b'
                    img = Alg.mult(i, b, 1, t.iq);
                }
                for (const auto& [b2, c] : img) {
                    std::size_t cpos = pos.at({etv, i + 1, b2});
                    m.add_to(r, cpos, c);
                }
            }
            if (!m.is_zero()) d.action.insert_or_assign({static_cast<int>(al), i}, std::move(m));
        }
    }

    auto M = std::make_shared<GradedModule>(std::move(d));
    M->validate();
    return M;
}

} // namespace

ModulePtr from_presentation(const ModulePresentation& mp, const AlgebraPtr& A) {
    if (const auto* s = std::get_if<SimpleModule>(&mp.kind)) return simple_module(A, s->vertex);
    if (std::get_if<RegularModule>(&mp.kind)) return regular_module(A);
    if (std::get_if<RegularBimodule>(&mp.kind)) return bind_regular_bimodule(A);
    if (const auto* ck = std::get_if<CokernelModule>(&mp.kind)) return bind_cokernel(*ck, A);
    if (const auto* rep = std::get_if<RepresentationModule>(&mp.kind))
        return from_representation(A, *rep);
    throw Error("unsupported module presentation");
}

/* --- graded isomorphism --- */

IsoResult is_isomorphic_graded(const ModulePtr& M, const ModulePtr& N) {
    const Field& F = M->field();
    // dimension vectors must agree
    if (M->data().dims != N->data().dims) {
        // compare as maps (both sparse, absent = 0)
        return {IsoResult::Verdict::No, std::nullopt};
    }
    if (M->is_zero()) {
        GradedMap id(M, N, 0);
        return {IsoResult::Verdict::Iso, id};
    }
    std::vector<GradedMap> H = hom_space(M, N, 0);
    if (H.empty()) return {IsoResult::Verdict::No, std::nullopt};

    std::size_t n = M->total_dim();
    std::size_t k = H.size();

    auto candidate = [&](const std::vector<long>& cs) -> std::optional<GradedMap> {
        GradedMap f(M, N, 0);
        for (std::size_t t = 0; t < k; ++t)
            if (cs[t] != 0) f = f.plus(H[t], F.from_long(cs[t]));
        for (const auto& [key, m] : M->data().dims) {
            Matrix b = f.block(key.first, key.second);
            if (!b.is_invertible()) return std::nullopt;
        }
        return f;
    };

    const double budget = 300000.0;
    unsigned long p = F.characteristic();
    std::size_t gridSize = n + 1;
    bool exhaustiveOverField = false;
    if (p != 0 && p <= n) {
        gridSize = p; // all residues
        exhaustiveOverField = true;
    }
    double points = 1;
    bool feasible = true;
    for (std::size_t t = 0; t < k; ++t) {
        points *= static_cast<double>(gridSize);
        if (points > budget) { feasible = false; break; }
    }

    if (feasible) {
        std::vector<long> cs(k, 0);
        for (;;) {
            if (auto f = candidate(cs)) return {IsoResult::Verdict::Iso, *f};
            std::size_t t = 0;
            while (t < k) {
                if (static_cast<std::size_t>(++cs[t]) < gridSize) break;
                cs[t] = 0;
                ++t;
            }
            if (t == k) break;
        }
        // the determinant polynomial vanishes on a full grid larger than
        // its degree in each variable (or on the whole field)
        (void)exhaustiveOverField;
        return {IsoResult::Verdict::No, std::nullopt};
    }

    // schedule fallback: single elements, all-ones, geometric weights
    std::vector<std::vector<long>> schedule;
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<long> cs(k, 0);
        cs[t] = 1;
        schedule.push_back(cs);
    }
    schedule.push_back(std::vector<long>(k, 1));
    for (long base = 2; base <= 7; ++base) {
        std::vector<long> cs(k);
        long w = 1;
        for (std::size_t t = 0; t < k; ++t) {
            cs[t] = w;
            w *= base;
        }
        schedule.push_back(cs);
    }
    for (const auto& cs : schedule)
        if (auto f = candidate(cs)) return {IsoResult::Verdict::Iso, *f};
    return {IsoResult::Verdict::Unknown, std::nullopt};
}

} // namespace diagext
