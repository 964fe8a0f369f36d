#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "jsr/errors.hpp"
#include "jsr/polytope.hpp"
#include "jsr/rng.hpp"
#include "jsr/shady.hpp"

using namespace jsr;

namespace {

size_t count_occurrences(const std::string& text, const std::string& needle) {
    size_t n = 0;
    for (size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1))
        ++n;
    return n;
}

}  // namespace

TEST_CASE("hull of the 2d cross-polytope") {
    const SymmetricPolytope p = hull_from_points({{1, 0}, {0, 1}}, 2);
    CHECK(p.vertex_reps().size() == 2);
    CHECK(p.facet_reps().size() == 2);
    // interior points of the segment between e1 and e2 lie on a facet
    const PolytopalNorm n(p);
    CHECK(n.norm({0.5, 0.5}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hull keeps input order and drops interior points") {
    const SymmetricPolytope p =
        hull_from_points({{1, 0}, {0.1, 0.05}, {0, 1}, {0.3, 0.3}}, 2);
    REQUIRE(p.vertex_reps().size() == 2);
    CHECK(approx_equal(p.vertex_reps()[0], {1, 0}, 1e-12));
    CHECK(approx_equal(p.vertex_reps()[1], {0, 1}, 1e-12));
}

TEST_CASE("hull of the icosahedron vertex data") {
    const double a = -0.6, b = -0.2, c = 0.1;
    const std::vector<Vec> pts = {{1, a, c}, {1, b, c}, {a, c, 1},
                                  {b, c, 1}, {c, 1, a}, {c, 1, b}};
    const SymmetricPolytope p = hull_from_points(pts, 3);
    CHECK(p.vertex_reps().size() == 6);
    CHECK(p.facet_reps().size() == 10);
    CHECK(p.vertex_count() == 12);
    CHECK(p.facet_count() == 20);
    // matches the exact catalog ball up to facet permutation
    const PolytopalNorm exact = icosahedron_norm();
    for (const Vec& nf : p.facet_reps()) {
        bool matched = false;
        for (const Vec& wf : exact.ball().facet_reps())
            if (approx_equal(nf, wf, 1e-9) || approx_equal(nf, negated(wf), 1e-9)) matched = true;
        CHECK(matched);
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(hull_from_points({{1, 1, 1}, {2, 2, 2}, {-1, -1, -1}}, 3),
                    DegeneratePolytopeError);
    CHECK_THROWS_AS(hull_from_points({{1, 0}}, 5), UnsupportedDimensionError);
}

TEST_CASE("hull in dimension 4") {
    // cross-polytope from its vertices
    std::vector<Vec> axes;
    for (int i = 0; i < 4; ++i) {
        Vec e(4, 0.0);
        e[i] = 1.0;
        axes.push_back(e);
    }
    const SymmetricPolytope cross = hull_from_points(axes, 4);
    CHECK(cross.vertex_reps().size() == 4);
    CHECK(cross.facet_reps().size() == 8);

    // cube from its corners, matching the direct catalog construction
    const PolytopalNorm cube = make_cube(4);
    const SymmetricPolytope hulled = hull_from_points(cube.ball().vertex_reps(), 4);
    REQUIRE(hulled.facet_reps().size() == 4);
    for (const Vec& nf : hulled.facet_reps()) {
        bool matched = false;
        for (const Vec& wf : cube.ball().facet_reps())
            if (approx_equal(nf, wf, 1e-9) || approx_equal(nf, negated(wf), 1e-9)) matched = true;
        CHECK(matched);
    }
}

TEST_CASE("norm and dual norm on catalog balls") {
    const PolytopalNorm cross = make_cross_polytope(3);
    const PolytopalNorm cube = make_cube(3);
    const Vec x = {1, -2, 3};
    CHECK(cross.norm(x) == doctest::Approx(6.0));       // l1
    CHECK(cross.dual_norm(x) == doctest::Approx(3.0));  // l-infinity
    CHECK(cube.norm(x) == doctest::Approx(3.0));
    CHECK(cube.dual_norm(x) == doctest::Approx(6.0));
    CHECK_THROWS_AS(cube.norm({1.0, 2.0}), DimensionMismatchError);

    const PolytopalNorm ico = icosahedron_norm();
    CHECK(ico.norm({1, -0.6, 0.1}) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm axioms hold on random samples") {
    Rng rng(71);
    const PolytopalNorm balls[] = {make_cube(3), make_cross_polytope(3), icosahedron_norm()};
    for (const PolytopalNorm& n : balls) {
        for (int rep = 0; rep < 10000; ++rep) {
            const Vec x = rng.vector(3, -2.0, 2.0);
            const Vec y = rng.vector(3, -2.0, 2.0);
            const double s = rng.uniform(-3.0, 3.0);
            CHECK(n.norm(scaled(x, s)) ==
                  doctest::Approx(std::abs(s) * n.norm(x)).epsilon(1e-9));
            CHECK(n.norm(add(x, y)) <= n.norm(x) + n.norm(y) + 1e-9);
        }
    }
}

TEST_CASE("bipolar duality") {
    Rng rng(5);
    const PolytopalNorm balls[] = {make_cube(3), make_cross_polytope(3), icosahedron_norm()};
    for (const PolytopalNorm& n : balls) {
        const PolytopalNorm dual(dual_ball(n.ball()));
        for (int rep = 0; rep < 2000; ++rep) {
            const Vec x = rng.vector(3, -2.0, 2.0);
            CHECK(dual.norm(x) == doctest::Approx(n.dual_norm(x)).epsilon(1e-9));
            CHECK(dual.dual_norm(x) == doctest::Approx(n.norm(x)).epsilon(1e-9));
        }
    }
}

TEST_CASE("hull is idempotent on its own vertex set") {
    const PolytopalNorm ico = icosahedron_norm();
    const SymmetricPolytope again = hull_from_points(ico.ball().vertex_reps(), 3);
    REQUIRE(again.facet_reps().size() == ico.ball().facet_reps().size());
    for (const Vec& nf : again.facet_reps()) {
        bool matched = false;
        for (const Vec& wf : ico.ball().facet_reps())
            if (approx_equal(nf, wf, 1e-12) || approx_equal(nf, negated(wf), 1e-12))
                matched = true;
        CHECK(matched);
    }
}

TEST_CASE("facet_of_point") {
    const PolytopalNorm cube = make_cube(3);
    const FacetSupport f = facet_of_point(cube, {1.0, 0.5, -0.2});
    CHECK(f.facet == 0);
    CHECK(approx_equal(f.functional, {1, 0, 0}, 0.0));

    const PolytopalNorm cross = make_cross_polytope(2);
    const FacetSupport g = facet_of_point(cross, {0.5, 0.5});
    CHECK(approx_equal(g.functional, {1, 1}, 1e-12));

    const PolytopalNorm ico = icosahedron_norm();
    const Vec v = ico.ball().vertex_reps()[0];
    const FacetSupport h = facet_of_point(ico, v);
    CHECK(dot(h.functional, v) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(facet_of_point(cube, {0.5, 0.0, 0.0}), InvalidInputError);
}

TEST_CASE("incidence data is active and bounded") {
    const PolytopalNorm ico = icosahedron_norm();
    const auto& ball = ico.ball();
    int incidences = 0;
    for (size_t f = 0; f < ball.facet_reps().size(); ++f) {
        for (int id : ball.incidence()[f]) {
            const Vec& v = ball.vertex_reps()[static_cast<size_t>(std::abs(id)) - 1];
            const double s = (id > 0 ? 1.0 : -1.0) * dot(ball.facet_reps()[f], v);
            CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            ++incidences;
        }
    }
    CHECK(incidences == 30);  // 10 facet reps, 3 vertices each
}

TEST_CASE("svg rendering") {
    const PolytopalNorm square = make_cube(2);
    const std::string svg2 = render_svg(square.ball(), {});
    // one closed path through the 4 vertices
    CHECK(count_occurrences(svg2, "M ") == 1);
    CHECK(count_occurrences(svg2, "L ") == 3);

    const PolytopalNorm ico = icosahedron_norm();
    CHECK(ico.ball().edges().size() == 30);
    const std::string svg3 = render_svg(ico.ball(), {});
    CHECK(count_occurrences(svg3, "<line") == 30);

    // deterministic output
    CHECK(render_svg(ico.ball(), {}) == svg3);

    SvgOverlay l1;
    l1.kind = SvgOverlay::Kind::polytope;
    l1.vertex_reps = make_cross_polytope(2).ball().vertex_reps();
    const std::string with_overlay = render_svg(square.ball(), {l1});
    CHECK(count_occurrences(with_overlay, "overlay0") == 1);

    CHECK_THROWS_AS(render_svg(make_cube(4).ball(), {}), UnsupportedDimensionError);
}
