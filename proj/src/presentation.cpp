#include "diagext/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace diagext {

namespace {

enum class Tok { Ident, Int, Star, Plus, Minus, Slash, LParen, RParen, LBrack, RBrack, Comma, Colon, RArrow, Equals, End };

struct Token {
    Tok kind;
    std::string text;
    int line = 0, col = 0;
};

struct Lexer {
    explicit Lexer(const std::string& src) : s(src) { advance(); }

    Token cur;

    void advance() {
        skip_ws();
        cur.line = line;
        cur.col = col;
        if (pos >= s.size()) {
            cur.kind = Tok::End;
            cur.text.clear();
            return;
        }
        char c = s[pos];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) bump();
            cur.kind = Tok::Ident;
            cur.text = s.substr(start, pos - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) bump();
            cur.kind = Tok::Int;
            cur.text = s.substr(start, pos - start);
            return;
        }
        if (c == '-' && pos + 1 < s.size() && s[pos + 1] == '>') {
            bump(); bump();
            cur.kind = Tok::RArrow;
            cur.text = "->";
            return;
        }
        bump();
        cur.text = std::string(1, c);
        switch (c) {
            case '*': cur.kind = Tok::Star; return;
            case '+': cur.kind = Tok::Plus; return;
            case '-': cur.kind = Tok::Minus; return;
            case '/': cur.kind = Tok::Slash; return;
            case '(': cur.kind = Tok::LParen; return;
            case ')': cur.kind = Tok::RParen; return;
            case '[': cur.kind = Tok::LBrack; return;
            case ']': cur.kind = Tok::RBrack; return;
            case ',': cur.kind = Tok::Comma; return;
            case ':': cur.kind = Tok::Colon; return;
            case '=': cur.kind = Tok::Equals; return;
            default:
                throw ParseError(ParseError::Kind::SyntaxError,
                                 std::string("unexpected character '") + c + "'", cur.line, cur.col);
        }
    }

private:
    void skip_ws() {
        while (pos < s.size()) {
            char c = s[pos];
            if (c == '#') {
                while (pos < s.size() && s[pos] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (s[pos] == '\n') { ++line; col = 1; }
        else ++col;
        ++pos;
    }

    const std::string& s;
    std::size_t pos = 0;
    int line = 1, col = 1;
};

bool is_keyword(const std::string& t) {
    return t == "field" || t == "unit" || t == "vertex" || t == "arrow" ||
           t == "relation" || t == "truncate" || t == "module" || t == "degrees";
}

[[noreturn]] void syntax(const Token& t, const std::string& msg) {
    throw ParseError(ParseError::Kind::SyntaxError, msg + " (got '" + t.text + "')", t.line, t.col);
}

struct ExprParser {
    Lexer& lx;
    const Field& F;
    const FieldSpec& fs;
    const QuiverSpec& quiver;

    /* Signed scalar literal: INT, INT/INT, unit name, with leading '-'. */
    Scalar parse_scalar_literal() {
        bool neg = false;
        while (lx.cur.kind == Tok::Minus) { neg = !neg; lx.advance(); }
        Scalar v;
        if (lx.cur.kind == Tok::Int) {
            mpz_class num(lx.cur.text);
            lx.advance();
            if (lx.cur.kind == Tok::Slash) {
                lx.advance();
                if (lx.cur.kind != Tok::Int) syntax(lx.cur, "expected denominator");
                mpz_class den(lx.cur.text);
                lx.advance();
                v = F.from_fraction(num, den);
            } else {
                v = F.from_fraction(num, 1);
            }
        } else if (lx.cur.kind == Tok::Ident && !is_keyword(lx.cur.text)) {
            auto u = fs.unit(lx.cur.text);
            if (!u) syntax(lx.cur, "unknown unit '" + lx.cur.text + "'");
            v = *u;
            lx.advance();
        } else {
            syntax(lx.cur, "expected scalar");
        }
        return neg ? F.neg(v) : v;
    }

    /* expr := term ((+|-) term)* ; term := (-)* factor (* factor)* */
    PathExpr parse_expr() {
        PathExpr out = parse_term();
        while (lx.cur.kind == Tok::Plus || lx.cur.kind == Tok::Minus) {
            bool minus = lx.cur.kind == Tok::Minus;
            lx.advance();
            PathExpr t = parse_term();
            for (auto& pt : t) {
                if (minus) pt.coeff = F.neg(pt.coeff);
                out.push_back(pt);
            }
        }
        return normalize(out);
    }

    PathExpr parse_term() {
        Scalar coeff = F.one();
        while (lx.cur.kind == Tok::Minus) { coeff = F.neg(coeff); lx.advance(); }
        std::vector<PathExpr> factors;
        bool first = true;
        for (;;) {
            if (!first) {
                if (lx.cur.kind != Tok::Star) break;
                lx.advance();
            }
            factors.push_back(parse_factor());
            first = false;
        }
        PathExpr acc{PathTerm{coeff, {}, -1}};
        for (const auto& f : factors) acc = multiply(acc, f);
        return acc;
    }

    PathExpr parse_factor() {
        const Token t = lx.cur;
        if (t.kind == Tok::Int) {
            return {PathTerm{parse_scalar_literal(), {}, -1}};
        }
        if (t.kind == Tok::LParen) {
            lx.advance();
            PathExpr e = parse_expr();
            if (lx.cur.kind != Tok::RParen) syntax(lx.cur, "expected ')'");
            lx.advance();
            return e;
        }
        if (t.kind == Tok::Ident && !is_keyword(t.text)) {
            lx.advance();
            if (auto u = fs.unit(t.text)) return {PathTerm{*u, {}, -1}};
            int a = quiver.arrow_index(t.text);
            if (a >= 0) return {PathTerm{F.one(), {a}, -1}};
            int v = quiver.vertex_index(t.text);
            if (v >= 0) return {PathTerm{F.one(), {}, v}};
            throw ParseError(ParseError::Kind::UnknownGenerator,
                             "'" + t.text + "' is not a unit, arrow or vertex", t.line, t.col);
        }
        syntax(t, "expected factor");
    }

    PathExpr multiply(const PathExpr& a, const PathExpr& b) {
        PathExpr out;
        for (const auto& x : a)
            for (const auto& y : b) {
                PathTerm t;
                t.coeff = F.mul(x.coeff, y.coeff);
                if (t.coeff.is_zero()) continue;
                // compose path parts in application order (x acts first)
                int xs = -1, xt = -1, ys = -1, yt = -1;
                if (!x.arrows.empty()) { xs = quiver.arrows[x.arrows.front()].src; xt = quiver.arrows[x.arrows.back()].tgt; }
                else if (x.vertex >= 0) { xs = xt = x.vertex; }
                if (!y.arrows.empty()) { ys = quiver.arrows[y.arrows.front()].src; yt = quiver.arrows[y.arrows.back()].tgt; }
                else if (y.vertex >= 0) { ys = yt = y.vertex; }
                (void)yt;

                if (xt >= 0 && ys >= 0 && xt != ys) continue; // dead composite
                t.arrows = x.arrows;
                t.arrows.insert(t.arrows.end(), y.arrows.begin(), y.arrows.end());
                if (t.arrows.empty()) {
                    t.vertex = xs >= 0 ? xs : (ys >= 0 ? ys : -1);
                } else {
                    t.vertex = -1;
                }
                out.push_back(std::move(t));
            }
        return out;
    }

    PathExpr normalize(PathExpr e) {
        std::sort(e.begin(), e.end(), [](const PathTerm& a, const PathTerm& b) {
            if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
            if (a.arrows != b.arrows) return a.arrows < b.arrows;
            return a.vertex < b.vertex;
        });
        PathExpr out;
        for (auto& t : e) {
            if (!out.empty() && out.back().arrows == t.arrows && out.back().vertex == t.vertex)
                out.back().coeff = F.add(out.back().coeff, t.coeff);
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const PathTerm& t) { return t.coeff.is_zero(); }),
                  out.end());
        return out;
    }
};

std::string scalar_source(const Scalar& s) {
    return s.raw().get_str(); // p or p/q, canonical
}

} // namespace

bool AlgebraPresentation::operator==(const AlgebraPresentation& o) const {
    if (!(field.field == o.field.field) || field.units != o.field.units) return false;
    if (quiver.vertices != o.quiver.vertices) return false;
    if (quiver.arrows.size() != o.quiver.arrows.size()) return false;
    for (std::size_t i = 0; i < quiver.arrows.size(); ++i) {
        const auto& a = quiver.arrows[i];
        const auto& b = o.quiver.arrows[i];
        if (a.name != b.name || a.src != b.src || a.tgt != b.tgt) return false;
    }
    if (relations.size() != o.relations.size()) return false;
    for (std::size_t i = 0; i < relations.size(); ++i)
        if (relations[i].terms != o.relations[i].terms) return false;
    return truncation == o.truncation;
}

namespace {

Field parse_field_name(const std::string& spec) {
    // "Q" or "GF(p)"
    if (spec == "Q") return Field::rationals();
    if (spec.rfind("GF(", 0) == 0 && spec.back() == ')')
        return Field::prime(std::stoul(spec.substr(3, spec.size() - 4)));
    throw ParseError(ParseError::Kind::SyntaxError, "unknown field '" + spec + "'");
}

} // namespace

AlgebraPresentation parse_algebra(const std::string& text,
                                  const std::map<std::string, std::string>* unit_overrides,
                                  const std::string* field_override) {
    Lexer lx(text);
    AlgebraPresentation P;
    bool field_seen = false;
    bool field_forced = false;
    if (field_override) {
        P.field.field = parse_field_name(*field_override);
        field_forced = true;
    }

    auto expect_ident = [&](const char* what) {
        if (lx.cur.kind != Tok::Ident) syntax(lx.cur, std::string("expected ") + what);
        std::string t = lx.cur.text;
        lx.advance();
        return t;
    };

    while (lx.cur.kind != Tok::End) {
        if (lx.cur.kind != Tok::Ident) syntax(lx.cur, "expected statement keyword");
        Token kw = lx.cur;
        if (kw.text == "field") {
            lx.advance();
            std::string f = expect_ident("field name");
            if (field_seen) syntax(kw, "duplicate field declaration");
            if (!P.field.units.empty() || !P.quiver.vertices.empty())
                syntax(kw, "field must be declared first");
            Field declared = Field::rationals();
            if (f == "Q") {
                declared = Field::rationals();
            } else if (f == "GF") {
                if (lx.cur.kind != Tok::LParen) syntax(lx.cur, "expected '('");
                lx.advance();
                if (lx.cur.kind != Tok::Int) syntax(lx.cur, "expected prime modulus");
                unsigned long p = std::stoul(lx.cur.text);
                lx.advance();
                if (lx.cur.kind != Tok::RParen) syntax(lx.cur, "expected ')'");
                lx.advance();
                declared = Field::prime(p);
            } else {
                syntax(kw, "unknown field '" + f + "'");
            }
            if (!field_forced) P.field.field = declared;
            field_seen = true;
        } else if (kw.text == "unit") {
            lx.advance();
            Token nt = lx.cur;
            std::string name = expect_ident("unit name");
            if (is_keyword(name)) syntax(nt, "unit name clashes with keyword");
            if (P.field.unit(name)) syntax(nt, "duplicate unit '" + name + "'");
            if (lx.cur.kind != Tok::Equals) syntax(lx.cur, "expected '='");
            lx.advance();
            Scalar v;
            if (unit_overrides && unit_overrides->count(name)) {
                // swallow the declared literal, then substitute
                ExprParser ep{lx, P.field.field, P.field, P.quiver};
                ep.parse_scalar_literal();
                Lexer ov(unit_overrides->at(name));
                ExprParser ep2{ov, P.field.field, P.field, P.quiver};
                v = ep2.parse_scalar_literal();
            } else {
                ExprParser ep{lx, P.field.field, P.field, P.quiver};
                v = ep.parse_scalar_literal();
            }
            if (v.is_zero())
                throw ParseError(ParseError::Kind::SyntaxError,
                                 "unit '" + name + "' must be nonzero", nt.line, nt.col);
            P.field.units.emplace_back(name, v);
        } else if (kw.text == "vertex") {
            lx.advance();
            bool any = false;
            while (lx.cur.kind == Tok::Ident && !is_keyword(lx.cur.text)) {
                Token vt = lx.cur;
                std::string name = expect_ident("vertex label");
                if (P.quiver.vertex_index(name) >= 0)
                    syntax(vt, "duplicate vertex '" + name + "'");
                P.quiver.vertices.push_back(name);
                any = true;
            }
            if (!any) syntax(lx.cur, "expected vertex label");
        } else if (kw.text == "arrow") {
            lx.advance();
            Token at = lx.cur;
            std::string name = expect_ident("arrow label");
            if (P.quiver.arrow_index(name) >= 0 || P.quiver.vertex_index(name) >= 0)
                syntax(at, "duplicate label '" + name + "'");
            if (lx.cur.kind != Tok::Colon) syntax(lx.cur, "expected ':'");
            lx.advance();
            Token st = lx.cur;
            std::string sv = expect_ident("source vertex");
            if (lx.cur.kind != Tok::RArrow) syntax(lx.cur, "expected '->'");
            lx.advance();
            Token tt = lx.cur;
            std::string tv = expect_ident("target vertex");
            int si = P.quiver.vertex_index(sv), ti = P.quiver.vertex_index(tv);
            if (si < 0)
                throw ParseError(ParseError::Kind::UnknownVertex, "'" + sv + "'", st.line, st.col);
            if (ti < 0)
                throw ParseError(ParseError::Kind::UnknownVertex, "'" + tv + "'", tt.line, tt.col);
            P.quiver.arrows.push_back(Arrow{name, si, ti});
        } else if (kw.text == "relation") {
            lx.advance();
            ExprParser ep{lx, P.field.field, P.field, P.quiver};
            PathExpr e = ep.parse_expr();
            Relation r;
            if (e.empty())
                throw ParseError(ParseError::Kind::NonQuadraticRelation,
                                 "relation normalizes to zero", kw.line, kw.col);
            int src = -1, tgt = -1;
            for (const auto& t : e) {
                if (t.arrows.size() != 2)
                    throw ParseError(ParseError::Kind::NonQuadraticRelation,
                                     "relation term is not a length-2 path", kw.line, kw.col);
                int s = P.quiver.arrows[t.arrows[0]].src;
                int g = P.quiver.arrows[t.arrows[1]].tgt;
                if (P.quiver.arrows[t.arrows[0]].tgt != P.quiver.arrows[t.arrows[1]].src)
                    throw ParseError(ParseError::Kind::NonQuadraticRelation,
                                     "relation term does not compose", kw.line, kw.col);
                if (src < 0) { src = s; tgt = g; }
                else if (src != s || tgt != g)
                    throw ParseError(ParseError::Kind::NonQuadraticRelation,
                                     "relation mixes source/target", kw.line, kw.col);
                r.terms.emplace_back(t.coeff, t.arrows[0], t.arrows[1]);
            }
            r.src = src;
            r.tgt = tgt;
            P.relations.push_back(std::move(r));
        } else if (kw.text == "truncate") {
            lx.advance();
            if (lx.cur.kind != Tok::Int) syntax(lx.cur, "expected truncation degree");
            P.truncation = std::stoi(lx.cur.text);
            lx.advance();
        } else {
            syntax(kw, "unknown statement '" + kw.text + "'");
        }
    }
    return P;
}

ModulePresentation parse_module(const std::string& text, const AlgebraPresentation& A) {
    Lexer lx(text);
    if (lx.cur.kind != Tok::Ident || lx.cur.text != "module")
        syntax(lx.cur, "expected 'module'");
    lx.advance();
    if (lx.cur.kind != Tok::Ident) syntax(lx.cur, "expected module kind");
    Token kind = lx.cur;
    lx.advance();

    ModulePresentation M;
    if (kind.text == "simple") {
        if (lx.cur.kind != Tok::Ident) syntax(lx.cur, "expected vertex label");
        int v = A.quiver.vertex_index(lx.cur.text);
        if (v < 0)
            throw ParseError(ParseError::Kind::UnknownGenerator,
                             "unknown vertex '" + lx.cur.text + "'", lx.cur.line, lx.cur.col);
        lx.advance();
        M.kind = SimpleModule{v};
    } else if (kind.text == "regular") {
        M.kind = RegularModule{};
    } else if (kind.text == "bimodule") {
        if (lx.cur.kind != Tok::Minus) syntax(lx.cur, "expected 'bimodule-regular'");
        lx.advance();
        if (lx.cur.kind != Tok::Ident || lx.cur.text != "regular")
            syntax(lx.cur, "expected 'bimodule-regular'");
        lx.advance();
        M.kind = RegularBimodule{};
    } else if (kind.text == "cokernel") {
        CokernelModule ck;
        if (lx.cur.kind != Tok::LBrack) syntax(lx.cur, "expected '['");
        lx.advance();
        ExprParser ep{lx, A.field.field, A.field, A.quiver};
        for (;;) {
            if (lx.cur.kind != Tok::LBrack) syntax(lx.cur, "expected row '['");
            lx.advance();
            std::vector<PathExpr> row;
            for (;;) {
                row.push_back(ep.parse_expr());
                if (lx.cur.kind == Tok::Comma) { lx.advance(); continue; }
                break;
            }
            if (lx.cur.kind != Tok::RBrack) syntax(lx.cur, "expected ']'");
            lx.advance();
            ck.entries.push_back(std::move(row));
            if (lx.cur.kind == Tok::Comma) { lx.advance(); continue; }
            break;
        }
        if (lx.cur.kind != Tok::RBrack) syntax(lx.cur, "expected ']'");
        lx.advance();

        ck.rows = ck.entries.size();
        ck.cols = ck.entries.empty() ? 0 : ck.entries[0].size();
        for (const auto& row : ck.entries)
            if (row.size() != ck.cols)
                throw ParseError(ParseError::Kind::ShapeMismatch, "ragged cokernel matrix",
                                 kind.line, kind.col);

        ck.row_degrees.assign(ck.rows, 0);
        if (lx.cur.kind == Tok::Ident && lx.cur.text == "degrees") {
            lx.advance();
            if (lx.cur.kind != Tok::LBrack) syntax(lx.cur, "expected '['");
            lx.advance();
            std::vector<int> degs;
            for (;;) {
                bool neg = false;
                while (lx.cur.kind == Tok::Minus) { neg = !neg; lx.advance(); }
                if (lx.cur.kind != Tok::Int) syntax(lx.cur, "expected degree");
                int d = std::stoi(lx.cur.text);
                degs.push_back(neg ? -d : d);
                lx.advance();
                if (lx.cur.kind == Tok::Comma) { lx.advance(); continue; }
                break;
            }
            if (lx.cur.kind != Tok::RBrack) syntax(lx.cur, "expected ']'");
            lx.advance();
            if (degs.size() != ck.rows)
                throw ParseError(ParseError::Kind::ShapeMismatch,
                                 "degrees list length != number of rows", kind.line, kind.col);
            ck.row_degrees = std::move(degs);
        }

        // validate entries: homogeneous elements of e_v R e_w, infer vertices
        const auto& qv = A.quiver;
        ck.row_vertices.assign(ck.rows, -1);
        ck.col_vertices.assign(ck.cols, -1);
        ck.col_degrees.assign(ck.cols, INT32_MIN);
        for (std::size_t i = 0; i < ck.rows; ++i) {
            for (std::size_t j = 0; j < ck.cols; ++j) {
                const PathExpr& e = ck.entries[i][j];
                if (e.empty()) continue;
                int src = -1, tgt = -1;
                std::size_t len = e.front().arrows.size();
                for (const auto& t : e) {
                    if (t.arrows.size() != len)
                        throw ParseError(ParseError::Kind::EntryNotInAlgebra,
                                         "entry is not homogeneous", kind.line, kind.col);
                    int s, g;
                    if (!t.arrows.empty()) {
                        s = qv.arrows[t.arrows.front()].src;
                        g = qv.arrows[t.arrows.back()].tgt;
                    } else {
                        s = g = t.vertex; // may be -1 (scalar*identity)
                    }
                    if (s >= 0) {
                        if (src < 0) { src = s; tgt = g; }
                        else if (src != s || tgt != g)
                            throw ParseError(ParseError::Kind::EntryNotInAlgebra,
                                             "entry mixes source/target vertices", kind.line,
                                             kind.col);
                    }
                }
                if (src >= 0) {
                    if (ck.row_vertices[i] < 0) ck.row_vertices[i] = src;
                    else if (ck.row_vertices[i] != src)
                        throw ParseError(ParseError::Kind::ShapeMismatch,
                                         "row mixes generator vertices", kind.line, kind.col);
                    if (ck.col_vertices[j] < 0) ck.col_vertices[j] = tgt;
                    else if (ck.col_vertices[j] != tgt)
                        throw ParseError(ParseError::Kind::ShapeMismatch,
                                         "column mixes target vertices", kind.line, kind.col);
                }
                int cd = ck.row_degrees[i] + static_cast<int>(len);
                if (ck.col_degrees[j] == INT32_MIN) ck.col_degrees[j] = cd;
                else if (ck.col_degrees[j] != cd)
                    throw ParseError(ParseError::Kind::ShapeMismatch,
                                     "column is not homogeneous", kind.line, kind.col);
            }
        }
        for (auto& v : ck.row_vertices)
            if (v < 0) v = 0;
        for (std::size_t j = 0; j < ck.cols; ++j) {
            if (ck.col_vertices[j] < 0) ck.col_vertices[j] = 0;
            if (ck.col_degrees[j] == INT32_MIN)
                ck.col_degrees[j] = (ck.rows ? ck.row_degrees[0] : 0) + 1;
        }
        M.kind = std::move(ck);
    } else {
        syntax(kind, "unknown module kind '" + kind.text + "'");
    }
    if (lx.cur.kind != Tok::End) syntax(lx.cur, "trailing input after module");
    return M;
}

namespace {

std::string expr_source(const PathExpr& e, const AlgebraPresentation& A) {
    if (e.empty()) return "0";
    std::string s;
    const Field& F = A.field.field;
    bool first = true;
    for (const auto& t : e) {
        Scalar c = t.coeff;
        bool neg = false;
        if (F.is_rational() && c.raw() < 0) { neg = true; c = F.neg(c); }
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        std::string body;
        for (std::size_t k = 0; k < t.arrows.size(); ++k) {
            if (k) body += "*";
            body += A.quiver.arrows[t.arrows[k]].name;
        }
        if (t.arrows.empty() && t.vertex >= 0) body = A.quiver.vertices[t.vertex];
        if (body.empty()) {
            s += scalar_source(c);
        } else if (c == F.one()) {
            s += body;
        } else {
            s += scalar_source(c) + "*" + body;
        }
    }
    return s;
}

} // namespace

std::string pretty_print(const AlgebraPresentation& A) {
    std::ostringstream out;
    out << "field " << A.field.field.describe() << "\n";
    for (const auto& [n, v] : A.field.units) out << "unit " << n << " = " << scalar_source(v) << "\n";
    if (!A.quiver.vertices.empty()) {
        out << "vertex";
        for (const auto& v : A.quiver.vertices) out << " " << v;
        out << "\n";
    }
    for (const auto& a : A.quiver.arrows)
        out << "arrow " << a.name << ": " << A.quiver.vertices[a.src] << " -> "
            << A.quiver.vertices[a.tgt] << "\n";
    for (const auto& r : A.relations) {
        PathExpr e;
        for (const auto& [c, a1, a2] : r.terms) e.push_back(PathTerm{c, {a1, a2}, -1});
        out << "relation " << expr_source(e, A) << "\n";
    }
    if (A.truncation) out << "truncate " << *A.truncation << "\n";
    return out.str();
}

std::string pretty_print(const ModulePresentation& M, const AlgebraPresentation& A) {
    std::ostringstream out;
    if (const auto* s = std::get_if<SimpleModule>(&M.kind)) {
        out << "module simple " << A.quiver.vertices[s->vertex] << "\n";
    } else if (std::get_if<RegularModule>(&M.kind)) {
        out << "module regular\n";
    } else if (std::get_if<RegularBimodule>(&M.kind)) {
        out << "module bimodule-regular\n";
    } else if (const auto* ck = std::get_if<CokernelModule>(&M.kind)) {
        out << "module cokernel [";
        for (std::size_t i = 0; i < ck->rows; ++i) {
            out << (i ? ", [" : "[");
            for (std::size_t j = 0; j < ck->cols; ++j)
                out << (j ? ", " : "") << expr_source(ck->entries[i][j], A);
            out << "]";
        }
        out << "] degrees [";
        for (std::size_t i = 0; i < ck->rows; ++i) out << (i ? ", " : "") << ck->row_degrees[i];
        out << "]\n";
    } else {
        out << "# representation module (programmatic only)\n";
    }
    return out.str();
}

} // namespace diagext
