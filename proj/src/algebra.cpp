#include "diagext/algebra.hpp"

#include <algorithm>

namespace diagext {

namespace {

std::string path_name(const QuiverSpec& q, const std::vector<int>& path, int vertex) {
    if (path.empty()) return q.vertices.at(vertex);
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += "*";
        s += q.arrows[path[i]].name;
    }
    return s;
}

} // namespace

const SpRow& GradedAlgebra::mult(int d1, std::size_t i, int d2, std::size_t j) const {
    static const SpRow empty;
    int d = d1 + d2;
    if (d > max_degree_) {
        require_degree(d);
        return empty; // complete: product lands in a zero degree
    }
    return mult_.at({d1, d2}).at(i).at(j);
}

SpRow GradedAlgebra::mult_vec(int d1, const SpRow& x, int d2, const SpRow& y) const {
    SpRow acc;
    for (const auto& [i, c] : x)
        for (const auto& [j, e] : y) {
            Scalar f = field_.mul(c, e);
            if (f.is_zero()) continue;
            sp_axpy(field_, acc, mult(d1, i, d2, j), f);
        }
    return acc;
}

SpRow GradedAlgebra::path_coords(const std::vector<int>& arrows, int vertex) const {
    if (arrows.empty()) {
        if (vertex < 0 || vertex >= vertices()) throw Error("path_coords: bad vertex");
        return {{static_cast<std::size_t>(vertex), field_.one()}};
    }
    if (rewrite_.empty()) throw Error("path_coords: not a path-materialized algebra");
    int d = static_cast<int>(arrows.size());
    require_degree(d);
    if (d > max_degree_) return {};
    auto it = rewrite_.at(d).find(arrows);
    if (it == rewrite_.at(d).end()) return {}; // dead or incomposable path
    return it->second;
}

std::size_t GradedAlgebra::tensor_index(int d, const TensorLabel& t) const {
    auto it = tensor_index_.find({d, t.dp, t.ip, t.iq});
    if (it == tensor_index_.end()) throw InternalError("tensor index lookup");
    return it->second;
}

void GradedAlgebra::build_quadratic_relations() {
    if (!degree_available(2)) return;
    composable_pairs_.clear();
    const auto& b1 = basis_.at(1);
    for (std::size_t i = 0; i < b1.size(); ++i)
        for (std::size_t j = 0; j < b1.size(); ++j)
            if (b1[i].tgt == b1[j].src) composable_pairs_.push_back({i, j});
    std::size_t d2 = static_cast<std::size_t>(dim(2));
    Matrix A(field_, composable_pairs_.size(), d2);
    for (std::size_t p = 0; p < composable_pairs_.size(); ++p) {
        const auto& [i, j] = composable_pairs_[p];
        for (const auto& [k, c] : mult(1, i, 1, j)) A.set(p, k, c);
    }
    quadratic_relations_ = std::make_shared<Matrix>(left_kernel_rows(A));
    // rows of quadratic_relations_ are vectors over composable pairs
}

AlgebraPtr GradedAlgebra::materialize(const AlgebraPresentation& P, int max_degree) {
    if (P.truncation && max_degree > *P.truncation)
        throw TruncationError("TruncationExceeded: requested degree " +
                              std::to_string(max_degree) + " beyond declared truncate " +
                              std::to_string(*P.truncation));
    if (P.quiver.vertices.empty())
        throw ParseError(ParseError::Kind::SyntaxError, "algebra has no vertices");

    auto Aown = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
    GradedAlgebra& A = *Aown;
    A.field_ = P.field.field;
    A.vertex_names_ = P.quiver.vertices;
    const Field& F = A.field_;
    const auto& qv = P.quiver;

    int V = static_cast<int>(qv.vertices.size());

    // degree 0: vertex idempotents
    A.basis_.emplace_back();
    for (int v = 0; v < V; ++v)
        A.basis_[0].push_back(BasisElem{v, v, qv.vertices[v], {}});
    A.rewrite_.emplace_back(); // unused at degree 0

    // paths per degree, in length-lex order
    std::vector<std::vector<std::vector<int>>> paths(1);
    // degree 1: arrows
    std::vector<SpRow> prev_ideal_rows; // over paths_{d} coordinates

    for (int d = 1; d <= max_degree; ++d) {
        // enumerate paths of degree d
        std::vector<std::vector<int>> pd;
        if (d == 1) {
            for (std::size_t a = 0; a < qv.arrows.size(); ++a) pd.push_back({static_cast<int>(a)});
        } else {
            for (const auto& p : paths[d - 1])
                for (std::size_t a = 0; a < qv.arrows.size(); ++a)
                    if (qv.arrows[p.back()].tgt == qv.arrows[a].src) {
                        auto np = p;
                        np.push_back(static_cast<int>(a));
                        pd.push_back(std::move(np));
                    }
        }
        paths.push_back(pd);
        std::map<std::vector<int>, std::size_t> pidx;
        for (std::size_t k = 0; k < pd.size(); ++k) pidx[pd[k]] = k;

        // ideal rows in degree d
        std::vector<SpRow> rows;
        if (d == 2) {
            for (const auto& r : P.relations) {
                SpRow row;
                for (const auto& [c, a1, a2] : r.terms) {
                    auto it = pidx.find({a1, a2});
                    if (it == pidx.end()) throw InternalError("relation path missing");
                    row.push_back({it->second, c});
                }
                std::sort(row.begin(), row.end());
                rows.push_back(std::move(row));
            }
        } else if (d > 2) {
            for (const auto& r : prev_ideal_rows) {
                if (r.empty()) continue;
                const auto& first_path = paths[d - 1][r.front().first];
                int rsrc = qv.arrows[first_path.front()].src;
                int rtgt = qv.arrows[first_path.back()].tgt;
                // left extension a * r
                for (std::size_t a = 0; a < qv.arrows.size(); ++a) {
                    if (qv.arrows[a].tgt != rsrc) continue;
                    SpRow row;
                    for (const auto& [k, c] : r) {
                        std::vector<int> np{static_cast<int>(a)};
                        const auto& tail = paths[d - 1][k];
                        np.insert(np.end(), tail.begin(), tail.end());
                        row.push_back({pidx.at(np), c});
                    }
                    std::sort(row.begin(), row.end());
                    rows.push_back(std::move(row));
                }
                // right extension r * a
                for (std::size_t a = 0; a < qv.arrows.size(); ++a) {
                    if (qv.arrows[a].src != rtgt) continue;
                    SpRow row;
                    for (const auto& [k, c] : r) {
                        auto np = paths[d - 1][k];
                        np.push_back(static_cast<int>(a));
                        row.push_back({pidx.at(np), c});
                    }
                    std::sort(row.begin(), row.end());
                    rows.push_back(std::move(row));
                }
            }
        }

        // reduce, pick basis = non-pivot paths, build rewrite
        Matrix I = sp_rows_to_matrix(F, rows, pd.size());
        std::vector<std::size_t> piv;
        Matrix R = I.rref(&piv);
        std::vector<bool> is_pivot(pd.size(), false);
        for (auto c : piv) is_pivot[c] = true;

        std::vector<BasisElem> bd;
        std::map<std::size_t, std::size_t> col_to_basis;
        for (std::size_t k = 0; k < pd.size(); ++k) {
            if (is_pivot[k]) continue;
            col_to_basis[k] = bd.size();
            BasisElem e;
            e.path = pd[k];
            e.src = qv.arrows[pd[k].front()].src;
            e.tgt = qv.arrows[pd[k].back()].tgt;
            e.name = path_name(qv, pd[k], -1);
            bd.push_back(std::move(e));
        }

        auto& rw = A.rewrite_.emplace_back();
        for (std::size_t k = 0; k < pd.size(); ++k) {
            if (!is_pivot[k]) {
                rw[pd[k]] = SpRow{{col_to_basis[k], F.one()}};
            }
        }
        for (std::size_t r = 0; r < piv.size(); ++r) {
            SpRow val;
            for (const auto& [c, v] : R.row(r)) {
                if (c == piv[r]) continue;
                val.push_back({col_to_basis.at(c), F.neg(v)});
            }
            rw[pd[piv[r]]] = std::move(val);
        }

        // keep reduced ideal rows for the next degree
        prev_ideal_rows.clear();
        for (std::size_t rr = 0; rr < piv.size(); ++rr) {
            SpRow row;
            for (const auto& [c, v] : R.row(rr)) row.push_back({c, v});
            prev_ideal_rows.push_back(std::move(row));
        }

        A.basis_.push_back(std::move(bd));
        if (A.basis_.back().empty()) {
            A.complete_ = true;
            break;
        }
    }
    A.max_degree_ = static_cast<int>(A.basis_.size()) - 1;

    // multiplication tables
    for (int d1 = 0; d1 <= A.max_degree_; ++d1)
        for (int d2 = 0; d1 + d2 <= A.max_degree_; ++d2) {
            auto& tab = A.mult_[{d1, d2}];
            std::size_t n1 = A.basis_[d1].size(), n2 = A.basis_[d2].size();
            tab.assign(n1, std::vector<SpRow>(n2));
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) {
                    const BasisElem& x = A.basis_[d1][i];
                    const BasisElem& y = A.basis_[d2][j];
                    if (x.tgt != y.src) continue; // stays empty
                    if (d1 == 0) {
                        tab[i][j] = SpRow{{j, F.one()}};
                    } else if (d2 == 0) {
                        tab[i][j] = SpRow{{i, F.one()}};
                    } else {
                        auto np = x.path;
                        np.insert(np.end(), y.path.begin(), y.path.end());
                        tab[i][j] = A.rewrite_.at(d1 + d2).at(np);
                    }
                }
        }

    // factorizations through degree 1
    A.fact_left_.assign(A.max_degree_ + 1, {});
    A.fact_right_.assign(A.max_degree_ + 1, {});
    for (int d = 2; d <= A.max_degree_; ++d) {
        auto& fl = A.fact_left_[d];
        auto& fr = A.fact_right_[d];
        fl.resize(A.basis_[d].size());
        fr.resize(A.basis_[d].size());
        for (std::size_t k = 0; k < A.basis_[d].size(); ++k) {
            const auto& p = A.basis_[d][k].path;
            std::vector<int> tail(p.begin() + 1, p.end());
            for (const auto& [m, c] : A.rewrite_.at(d - 1).at(tail))
                fl[k].emplace_back(c, static_cast<std::size_t>(p.front()), m);
            std::vector<int> head(p.begin(), p.end() - 1);
            for (const auto& [m, c] : A.rewrite_.at(d - 1).at(head))
                fr[k].emplace_back(c, m, static_cast<std::size_t>(p.back()));
        }
    }
    A.build_quadratic_relations();
    return Aown;
}

AlgebraPtr GradedAlgebra::opposite(const AlgebraPtr& Ain) {
    const GradedAlgebra& A = *Ain;
    auto Bown = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
    GradedAlgebra& B = *Bown;
    B.field_ = A.field_;
    B.vertex_names_ = A.vertex_names_;
    B.max_degree_ = A.max_degree_;
    B.complete_ = A.complete_;
    B.basis_.resize(A.max_degree_ + 1);
    for (int d = 0; d <= A.max_degree_; ++d) {
        for (const auto& e : A.basis_[d]) {
            BasisElem o = e;
            std::swap(o.src, o.tgt);
            B.basis_[d].push_back(std::move(o));
        }
    }
    for (int d1 = 0; d1 <= B.max_degree_; ++d1)
        for (int d2 = 0; d1 + d2 <= B.max_degree_; ++d2) {
            auto& tab = B.mult_[{d1, d2}];
            std::size_t n1 = B.basis_[d1].size(), n2 = B.basis_[d2].size();
            tab.assign(n1, std::vector<SpRow>(n2));
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) tab[i][j] = A.mult(d2, j, d1, i);
        }
    B.fact_left_.assign(B.max_degree_ + 1, {});
    B.fact_right_.assign(B.max_degree_ + 1, {});
    for (int d = 2; d <= B.max_degree_; ++d) {
        auto& fl = B.fact_left_[d];
        auto& fr = B.fact_right_[d];
        fl.resize(B.basis_[d].size());
        fr.resize(B.basis_[d].size());
        for (std::size_t k = 0; k < B.basis_[d].size(); ++k) {
            for (const auto& [c, m, a] : A.fact_right(d, k)) fl[k].emplace_back(c, a, m);
            for (const auto& [c, a, m] : A.fact_left(d, k)) fr[k].emplace_back(c, m, a);
        }
    }
    B.build_quadratic_relations();
    return Bown;
}

AlgebraPtr GradedAlgebra::enveloping(const AlgebraPtr& Ain) {
    const GradedAlgebra& A = *Ain;
    auto Bown = std::shared_ptr<GradedAlgebra>(new GradedAlgebra());
    GradedAlgebra& B = *Bown;
    B.field_ = A.field_;
    B.base_ = Ain;
    const Field& F = B.field_;
    int V = A.vertices();
    B.vertices_of_base_ = V;
    for (int v = 0; v < V; ++v)
        for (int w = 0; w < V; ++w)
            B.vertex_names_.push_back(A.vertex_name(v) + "|" + A.vertex_name(w));

    int topA = A.max_degree_;
    while (topA > 0 && A.dim(topA) == 0) --topA;
    int maxB = A.complete_ ? 2 * topA : A.max_degree_;
    B.complete_ = A.complete_;

    B.basis_.resize(maxB + 1);
    B.tensor_labels_.resize(maxB + 1);
    for (int n = 0; n <= maxB; ++n) {
        for (int dp = 0; dp <= n; ++dp) {
            int dq = n - dp;
            if (!A.degree_available(dp) || !A.degree_available(dq)) continue;
            for (std::size_t ip = 0; ip < static_cast<std::size_t>(A.dim(dp)); ++ip)
                for (std::size_t iq = 0; iq < static_cast<std::size_t>(A.dim(dq)); ++iq) {
                    const BasisElem& p = A.basis(dp)[ip];
                    const BasisElem& q = A.basis(dq)[iq];
                    BasisElem e;
                    e.src = B.pair_vertex(p.tgt, q.src);
                    e.tgt = B.pair_vertex(p.src, q.tgt);
                    e.name = p.name + "|" + q.name;
                    B.tensor_index_[{n, dp, ip, iq}] = B.basis_[n].size();
                    B.tensor_labels_[n].push_back(TensorLabel{dp, ip, dq, iq});
                    B.basis_[n].push_back(std::move(e));
                }
        }
        if (B.basis_[n].empty() && n > 0) {
            B.basis_.resize(n + 1);
            B.tensor_labels_.resize(n + 1);
            maxB = n;
            B.complete_ = true;
            break;
        }
    }
    B.max_degree_ = maxB;

    for (int d1 = 0; d1 <= maxB; ++d1)
        for (int d2 = 0; d1 + d2 <= maxB; ++d2) {
            auto& tab = B.mult_[{d1, d2}];
            std::size_t n1 = B.basis_[d1].size(), n2 = B.basis_[d2].size();
            tab.assign(n1, std::vector<SpRow>(n2));
            for (std::size_t i = 0; i < n1; ++i)
                for (std::size_t j = 0; j < n2; ++j) {
                    const TensorLabel& x = B.tensor_labels_[d1][i];
                    const TensorLabel& y = B.tensor_labels_[d2][j];
                    // (p|q)(p'|q') = (p'p | qq')
                    const SpRow& pp = A.mult(y.dp, y.ip, x.dp, x.ip);
                    const SpRow& qq = A.mult(x.dq, x.iq, y.dq, y.iq);
                    SpRow out;
                    int rdp = x.dp + y.dp;
                    for (const auto& [m, c1] : pp)
                        for (const auto& [nn, c2] : qq) {
                            std::size_t idx = B.tensor_index_.at({d1 + d2, rdp, m, nn});
                            Scalar c = F.mul(c1, c2);
                            SpRow unit{{idx, c}};
                            sp_axpy(F, out, unit, F.one());
                        }
                    tab[i][j] = std::move(out);
                }
        }

    // split helpers on A: x = sum c * rest * arrow  /  sum c * arrow * rest
    auto split_right = [&](int d, std::size_t k) -> GradedAlgebra::Fact {
        if (d >= 2) return A.fact_right(d, k);
        // d == 1: a = e_{src a} * a
        const BasisElem& a = A.basis(1)[k];
        return {{F.one(), static_cast<std::size_t>(a.src), k}};
    };
    auto split_left = [&](int d, std::size_t k) -> GradedAlgebra::Fact {
        if (d >= 2) return A.fact_left(d, k);
        const BasisElem& a = A.basis(1)[k];
        return {{F.one(), k, static_cast<std::size_t>(a.tgt)}};
    };

    B.fact_left_.assign(maxB + 1, {});
    B.fact_right_.assign(maxB + 1, {});
    for (int n = 2; n <= maxB; ++n) {
        auto& fl = B.fact_left_[n];
        auto& fr = B.fact_right_[n];
        fl.resize(B.basis_[n].size());
        fr.resize(B.basis_[n].size());
        for (std::size_t k = 0; k < B.basis_[n].size(); ++k) {
            const TensorLabel& t = B.tensor_labels_[n][k];
            const BasisElem& q = A.basis(t.dq)[t.iq];
            const BasisElem& p = A.basis(t.dp)[t.ip];
            if (t.dp >= 1) {
                // p = sum c m*a  =>  (p|q) = sum c (a|e_srcq) * (m|q)
                for (const auto& [c, m, a] : split_right(t.dp, t.ip)) {
                    std::size_t alpha = B.tensor_index_.at({1, 1, a, static_cast<std::size_t>(q.src)});
                    std::size_t rest = B.tensor_index_.at({n - 1, t.dp - 1, m, t.iq});
                    fl[k].emplace_back(c, alpha, rest);
                }
            } else {
                // q = sum c a*m  =>  (e|q) = sum c (e|a) * (e|m)
                for (const auto& [c, a, m] : split_left(t.dq, t.iq)) {
                    std::size_t alpha = B.tensor_index_.at({1, 0, static_cast<std::size_t>(p.src), a});
                    std::size_t rest = B.tensor_index_.at({n - 1, 0, static_cast<std::size_t>(p.src), m});
                    fl[k].emplace_back(c, alpha, rest);
                }
            }
            if (t.dq >= 1) {
                // q = sum c m*a  =>  (p|q) = sum c (p|m) * (e_srcp|a)
                for (const auto& [c, m, a] : split_right(t.dq, t.iq)) {
                    std::size_t alpha = B.tensor_index_.at({1, 0, static_cast<std::size_t>(p.src), a});
                    std::size_t rest = B.tensor_index_.at({n - 1, t.dp, t.ip, m});
                    fr[k].emplace_back(c, rest, alpha);
                }
            } else {
                // p = sum c a*m  =>  (p|e_w) = sum c (m|e_w) * (a|e_w)
                for (const auto& [c, a, m] : split_left(t.dp, t.ip)) {
                    std::size_t alpha = B.tensor_index_.at({1, 1, a, static_cast<std::size_t>(q.src)});
                    std::size_t rest = B.tensor_index_.at({n - 1, t.dp - 1, m, t.iq});
                    fr[k].emplace_back(c, rest, alpha);
                }
            }
        }
    }

    B.build_quadratic_relations();
    return Bown;
}

} // namespace diagext
