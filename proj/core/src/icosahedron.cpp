#include <algorithm>

#include "jsr/errors.hpp"
#include "jsr/shady.hpp"

namespace jsr {

namespace {

using RVec = std::array<Rat, 3>;

RVec rotate(const std::array<RVec, 3>& m, const RVec& v) {
    RVec out;
    for (int i = 0; i < 3; ++i)
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

Rat inner(const RVec& a, const RVec& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool equal(const RVec& a, const RVec& b) {
    return a[0] == b[0] && a[1] == b[1] && a[2] == b[2];
}

RVec neg(const RVec& a) { return {-a[0], -a[1], -a[2]}; }

IcosahedronCatalog build_catalog() {
    IcosahedronCatalog cat;
    const Rat a(-3, 5), b(-1, 5), c(1, 10), one(1);
    cat.vertices = {
        {one, a, c}, {one, b, c}, {a, c, one}, {b, c, one}, {c, one, a}, {c, one, b},
    };
    cat.symmetry[0] = RVec{Rat(0), Rat(0), Rat(-1)};
    cat.symmetry[1] = RVec{Rat(-1), Rat(0), Rat(0)};
    cat.symmetry[2] = RVec{Rat(0), Rat(-1), Rat(0)};
    cat.normal_seeds = {
        {Rat(20, 53), Rat(-55, 53), Rat(0)},
        {Rat(20, 17), Rat(15, 17), Rat(0)},
        {Rat(10, 9), Rat(10, 9), Rat(10, 9)},
        {Rat(390, 1069), Rat(-1250, 1069), Rat(-710, 1069)},
    };

    for (const RVec& seed : cat.normal_seeds) {
        std::vector<RVec> orbit;
        RVec w = seed;
        for (int k = 0; k < 6; ++k) {
            if (std::none_of(orbit.begin(), orbit.end(),
                             [&](const RVec& o) { return equal(o, w); }))
                orbit.push_back(w);
            w = rotate(cat.symmetry, w);
        }
        if (!equal(w, seed))
            throw CorruptedCatalogError("icosahedron catalog: symmetry orbit did not close");
        cat.orbit_sizes.push_back(static_cast<int>(orbit.size()));
        cat.orbits.push_back(std::move(orbit));
    }

    const std::vector<int> expected_sizes = {6, 6, 2, 6};
    if (cat.orbit_sizes != expected_sizes)
        throw CorruptedCatalogError("icosahedron catalog: unexpected facet orbit sizes");

    std::vector<RVec> signed_vertices;
    for (const RVec& v : cat.vertices) {
        signed_vertices.push_back(v);
        signed_vertices.push_back(neg(v));
    }
    int facet_total = 0;
    for (const auto& orbit : cat.orbits) {
        for (const RVec& w : orbit) {
            ++facet_total;
            int incident = 0;
            for (const RVec& v : signed_vertices) {
                const Rat s = inner(w, v);
                if (Rat(1) < s || s < Rat(-1))
                    throw CorruptedCatalogError(
                        "icosahedron catalog: vertex violates a facet constraint");
                if (s == Rat(1)) ++incident;
            }
            if (incident != 3)
                throw CorruptedCatalogError(
                    "icosahedron catalog: facet is not a triangle with exact incidences");
        }
    }
    if (facet_total != 20 || static_cast<int>(signed_vertices.size()) != 12)
        throw CorruptedCatalogError("icosahedron catalog: wrong face counts");
    return cat;
}

}  // namespace

const IcosahedronCatalog& icosahedron_catalog() {
    static const IcosahedronCatalog cat = build_catalog();
    return cat;
}

PolytopalNorm icosahedron_norm() {
    const IcosahedronCatalog& cat = icosahedron_catalog();
    std::vector<Vec> verts;
    for (const auto& v : cat.vertices)
        verts.push_back({v[0].to_double(), v[1].to_double(), v[2].to_double()});

    // one representative per +/- facet pair, orbit by orbit
    std::vector<Vec> facets;
    std::vector<std::array<Rat, 3>> kept;
    for (const auto& orbit : cat.orbits) {
        for (const auto& w : orbit) {
            const auto wneg = neg(w);
            if (std::any_of(kept.begin(), kept.end(),
                            [&](const auto& k) { return equal(k, wneg); }))
                continue;
            kept.push_back(w);
            facets.push_back({w[0].to_double(), w[1].to_double(), w[2].to_double()});
        }
    }
    return PolytopalNorm(SymmetricPolytope::from_reps(3, std::move(verts), std::move(facets)));
}

MatrixSet icosahedron_tailored_set() {
    const IcosahedronCatalog& cat = icosahedron_catalog();
    Matrix sym(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) sym(i, j) = cat.symmetry[i][j].to_double();

    std::vector<Matrix> powers = {Matrix::identity(3)};
    for (int k = 1; k < 6; ++k) powers.push_back(powers.back() * sym);

    std::vector<Matrix> generated;
    for (const auto& pk : powers)
        for (const auto& v : cat.vertices)
            for (const auto& w : cat.normal_seeds)
                for (const auto& pl : powers) {
                    const Vec vv = pk * Vec{v[0].to_double(), v[1].to_double(), v[2].to_double()};
                    const Vec ww =
                        pl.transposed() * Vec{w[0].to_double(), w[1].to_double(), w[2].to_double()};
                    generated.push_back(outer(vv, ww));
                }
    return MatrixSet(3, std::move(generated));
}

}  // namespace jsr
