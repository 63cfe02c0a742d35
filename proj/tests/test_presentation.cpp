#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "diagext/presentation.hpp"

using namespace diagext;

static const char* QUANTUM_STRING = R"(
# quantum exterior algebra with a scaling unit
field GF(5)
unit q = 2
vertex v
arrow x: v -> v
arrow y: v -> v
relation x*y - q*y*x
relation x*x
relation y*y
)";

TEST_CASE("quantum plane source parses to three relations") {
    AlgebraPresentation P = parse_algebra(QUANTUM_STRING);
    CHECK(P.field.field.characteristic() == 5);
    CHECK(P.field.unit("q").has_value());
    CHECK(P.quiver.vertices.size() == 1);
    CHECK(P.quiver.arrows.size() == 2);
    REQUIRE(P.relations.size() == 3);
    // x*y - q*y*x normalizes with terms sorted by arrow pair
    const Relation& r = P.relations[0];
    REQUIRE(r.terms.size() == 2);
    CHECK(std::get<1>(r.terms[0]) == 0); // x*y first
    CHECK(std::get<2>(r.terms[0]) == 1);
    CHECK(std::get<0>(r.terms[1]) == P.field.field.from_long(-2)); // -q = -2 = 3 mod 5
}

TEST_CASE("free loop algebra parses; truncation directive recorded") {
    AlgebraPresentation P = parse_algebra("field Q\nvertex v\narrow x: v -> v\ntruncate 4\n");
    CHECK(P.relations.empty());
    REQUIRE(P.truncation.has_value());
    CHECK(*P.truncation == 4);
}

TEST_CASE("non-quadratic relation rejected") {
    std::string src = "field Q\nvertex v\narrow x: v -> v\narrow y: v -> v\nrelation x*y*x\n";
    CHECK_THROWS_AS(parse_algebra(src), ParseError);
    try {
        parse_algebra(src);
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::NonQuadraticRelation);
    }
}

TEST_CASE("parse errors carry kind and position") {
    try {
        parse_algebra("field Q\nvertex v\narrow a: v -> w\n");
        FAIL("expected UnknownVertex");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::UnknownVertex);
        CHECK(e.line == 3);
    }

    try {
        parse_algebra("field GF(4)\n");
        FAIL("expected NonPrimeModulus");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::NonPrimeModulus);
    }

    try {
        parse_algebra("field Q\nvertex v\nrelation @\n");
        FAIL("expected SyntaxError");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::SyntaxError);
        CHECK(e.line == 3);
        CHECK(e.col > 0);
    }
}

TEST_CASE("unit must be nonzero") {
    CHECK_THROWS_AS(parse_algebra("field Q\nunit q = 0\n"), ParseError);
}

TEST_CASE("module presentations") {
    AlgebraPresentation A = parse_algebra(QUANTUM_STRING);

    ModulePresentation m1 = parse_module("module cokernel [[-y, 0], [x, q*y]]", A);
    const auto& ck = std::get<CokernelModule>(m1.kind);
    CHECK(ck.rows == 2);
    CHECK(ck.cols == 2);
    CHECK(ck.entries[0][1].empty());               // literal 0
    CHECK(ck.entries[1][1].size() == 1);           // q*y
    CHECK(ck.row_degrees == std::vector<int>{0, 0});
    CHECK(ck.col_degrees == std::vector<int>{1, 1});

    ModulePresentation m2 = parse_module("module simple v", A);
    CHECK(std::get<SimpleModule>(m2.kind).vertex == 0);

    ModulePresentation m3 = parse_module("module cokernel [[x+y]]", A);
    const auto& ck3 = std::get<CokernelModule>(m3.kind);
    CHECK(ck3.rows == 1);
    CHECK(ck3.cols == 1);
    CHECK(ck3.entries[0][0].size() == 2);

    CHECK_NOTHROW(parse_module("module regular", A));
    CHECK_NOTHROW(parse_module("module bimodule-regular", A));
}

TEST_CASE("module errors") {
    AlgebraPresentation A = parse_algebra(QUANTUM_STRING);

    try {
        parse_module("module simple w", A);
        FAIL("expected UnknownGenerator");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::UnknownGenerator);
    }

    try {
        parse_module("module cokernel [[z]]", A);
        FAIL("expected UnknownGenerator");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::UnknownGenerator);
    }

    try {
        parse_module("module cokernel [[x + y*x]]", A);
        FAIL("expected EntryNotInAlgebra");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::EntryNotInAlgebra);
    }

    try {
        parse_module("module cokernel [[x, y], [x]]", A);
        FAIL("expected ShapeMismatch");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::ShapeMismatch);
    }

    try {
        parse_module("module cokernel [[x], [y]] degrees [0]", A);
        FAIL("expected ShapeMismatch");
    } catch (const ParseError& e) {
        CHECK(e.kind == ParseError::Kind::ShapeMismatch);
    }
}

TEST_CASE("unit override replaces the declared value") {
    std::map<std::string, std::string> ov{{"q", "3"}};
    AlgebraPresentation P = parse_algebra(QUANTUM_STRING, &ov);
    CHECK(*P.field.unit("q") == P.field.field.from_long(3));
}

TEST_CASE("pretty-print round trip on fixed sources") {
    for (const char* src :
         {QUANTUM_STRING, "field Q\nvertex a b\narrow f: a -> b\n",
          "field Q\nunit q = -1/2\nvertex v\narrow x: v -> v\narrow y: v -> v\n"
          "relation x*y + q*y*x\nrelation x*x\ntruncate 6\n"}) {
        AlgebraPresentation P = parse_algebra(src);
        CHECK(parse_algebra(pretty_print(P)) == P);
    }
}

TEST_CASE("pretty-print round trip on random presentations") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> nv(1, 3), na(1, 4), coef(-3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        AlgebraPresentation P;
        P.field.field = (trial % 2) ? Field::rationals() : Field::prime(7);
        int V = nv(rng);
        for (int v = 0; v < V; ++v) P.quiver.vertices.push_back("v" + std::to_string(v));
        int Arr = na(rng);
        for (int a = 0; a < Arr; ++a) {
            Arrow ar;
            ar.name = "a" + std::to_string(a);
            ar.src = std::uniform_int_distribution<int>(0, V - 1)(rng);
            ar.tgt = std::uniform_int_distribution<int>(0, V - 1)(rng);
            P.quiver.arrows.push_back(ar);
        }
        // random quadratic monomial relations
        for (int attempt = 0; attempt < 4; ++attempt) {
            int a1 = std::uniform_int_distribution<int>(0, Arr - 1)(rng);
            int a2 = std::uniform_int_distribution<int>(0, Arr - 1)(rng);
            if (P.quiver.arrows[a1].tgt != P.quiver.arrows[a2].src) continue;
            int c = coef(rng);
            if (c == 0) continue;
            Relation r;
            r.terms.emplace_back(P.field.field.from_long(c), a1, a2);
            r.src = P.quiver.arrows[a1].src;
            r.tgt = P.quiver.arrows[a2].tgt;
            bool dup = false;
            for (auto& existing : P.relations)
                if (std::get<1>(existing.terms[0]) == a1 && std::get<2>(existing.terms[0]) == a2)
                    dup = true;
            if (!dup) P.relations.push_back(r);
        }
        CHECK(parse_algebra(pretty_print(P)) == P);
    }
}

TEST_CASE("module pretty-print round trip") {
    AlgebraPresentation A = parse_algebra(QUANTUM_STRING);
    for (const char* src : {"module simple v", "module regular", "module bimodule-regular",
                            "module cokernel [[-y, 0], [x, q*y]]", "module cokernel [[x+y]]",
                            "module cokernel [[x*y], [y]] degrees [0, 1]"}) {
        ModulePresentation M = parse_module(src, A);
        ModulePresentation M2 = parse_module(pretty_print(M, A), A);
        CHECK(pretty_print(M, A) == pretty_print(M2, A));
    }
}
