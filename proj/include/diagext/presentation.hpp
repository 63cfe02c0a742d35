#ifndef DIAGEXT_PRESENTATION_HPP
#define DIAGEXT_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagext/matrix.hpp"
#include "diagext/scalar.hpp"

namespace diagext {

/* Ground field plus named nonzero scalars (e.g. q). */
struct FieldSpec {
    Field field = Field::rationals();
    std::vector<std::pair<std::string, Scalar>> units; // declaration order
    std::optional<Scalar> unit(const std::string& name) const {
        for (const auto& [n, v] : units)
            if (n == name) return v;
        return std::nullopt;
    }
};

struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
};

struct QuiverSpec {
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == name) return static_cast<int>(i);
        return -1;
    }
    int arrow_index(const std::string& name) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

/* One term of a linear combination of paths. Paths are written in
 * application order: in x*y the arrow x acts first. An empty arrow list
 * with vertex >= 0 is the idempotent e_vertex; vertex == -1 stands for
 * the identity (sum of all idempotents). */
struct PathTerm {
    Scalar coeff;
    std::vector<int> arrows;
    int vertex = -1;
};
using PathExpr = std::vector<PathTerm>;

/* Homogeneous quadratic relation: all paths share source and target. */
struct Relation {
    // (coeff, first arrow, second arrow), sorted by (a1, a2)
    std::vector<std::tuple<Scalar, int, int>> terms;
    int src = 0;
    int tgt = 0;
};

struct AlgebraPresentation {
    FieldSpec field;
    QuiverSpec quiver;
    std::vector<Relation> relations;
    std::optional<int> truncation;

    bool operator==(const AlgebraPresentation& o) const;
};

/* Module presentations, bound to an AlgebraPresentation. */
struct SimpleModule {
    int vertex;
};
struct RegularModule {};
struct RegularBimodule {};

struct CokernelModule {
    // entries[i][j] normalized path expressions; generators are rows
    std::vector<std::vector<PathExpr>> entries;
    std::vector<int> row_degrees;
    std::vector<int> row_vertices;   // inferred
    std::vector<int> col_degrees;    // inferred
    std::vector<int> col_vertices;   // inferred
    std::size_t rows = 0, cols = 0;
};

/* Per-vertex, per-degree dimensions with explicit arrow matrices; only
 * constructible programmatically. Arrow a acts comp[src(a)][d] ->
 * comp[tgt(a)][d+1], matrices in row-vector convention. */
struct RepresentationModule {
    std::map<std::pair<int, int>, std::size_t> dims; // (vertex, degree) -> dim
    std::map<std::pair<int, int>, Matrix> action;    // (arrow, degree)
};

struct ModulePresentation {
    std::variant<SimpleModule, RegularModule, RegularBimodule, CokernelModule,
                 RepresentationModule>
        kind;
};

/* Parse the line-oriented algebra language; see the repository README
 * for the grammar. unit_overrides replaces declared named-unit values
 * (textual scalar literals) before relations are evaluated. */
AlgebraPresentation parse_algebra(
    const std::string& text,
    const std::map<std::string, std::string>* unit_overrides = nullptr,
    const std::string* field_override = nullptr);

ModulePresentation parse_module(const std::string& text, const AlgebraPresentation& A);

std::string pretty_print(const AlgebraPresentation& A);
std::string pretty_print(const ModulePresentation& M, const AlgebraPresentation& A);

} // namespace diagext

#endif
