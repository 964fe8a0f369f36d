#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "jsr/errors.hpp"
#include "jsr/polytope.hpp"

namespace jsr {

namespace {

struct Projector {
    int dim;
    Vec u1, u2;

    explicit Projector(int d) : dim(d) {
        if (d == 2) return;
        // fixed oblique view for d = 3
        const Vec w = {0.42, 0.80, 0.43};
        const double wn = norm_2(w);
        const Vec wv = scaled(w, 1.0 / wn);
        u1 = {wv[1], -wv[0], 0.0};
        u1 = scaled(u1, 1.0 / norm_2(u1));
        u2 = {wv[1] * u1[2] - wv[2] * u1[1], wv[2] * u1[0] - wv[0] * u1[2],
              wv[0] * u1[1] - wv[1] * u1[0]};
    }

    std::pair<double, double> operator()(const Vec& p) const {
        if (dim == 2) return {p[0], -p[1]};
        return {dot(u1, p), -dot(u2, p)};
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v + 0.0);  // normalize -0
    return buf;
}

// vertices of a centrally symmetric 2d polytope in angular order
std::vector<Vec> polygon_order(const std::vector<Vec>& reps) {
    std::vector<Vec> pts = reps;
    for (const Vec& v : reps) pts.push_back(negated(v));
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    return pts;
}

}  // namespace

std::string render_svg(const SymmetricPolytope& p, const std::vector<SvgOverlay>& overlays) {
    const int d = p.dim();
    if (d != 2 && d != 3)
        throw UnsupportedDimensionError("render_svg supports d in {2,3}");
    const Projector proj(d);

    double extent = 0.0;
    auto grow = [&](const Vec& v) {
        const auto [x, y] = proj(v);
        extent = std::max({extent, std::abs(x), std::abs(y)});
    };
    for (const Vec& v : p.vertex_reps()) {
        grow(v);
        grow(negated(v));
    }
    for (const auto& o : overlays) {
        for (const Vec& v : o.vertex_reps) {
            grow(v);
            grow(negated(v));
        }
        if (!o.arrow.empty()) grow(o.arrow);
    }
    if (extent <= 0.0) extent = 1.0;
    const double s = 200.0 / extent;
    const double c = 240.0;
    auto px = [&](const Vec& v) {
        const auto [x, y] = proj(v);
        return std::pair<double, double>(c + s * x, c + s * y);
    };

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
        "viewBox=\"0 0 480 480\">\n";

    auto path_of = [&](const std::vector<Vec>& reps, const char* style) {
        const std::vector<Vec> ring = polygon_order(reps);
        std::string out = "<path d=\"";
        for (size_t i = 0; i < ring.size(); ++i) {
            const auto [x, y] = px(ring[i]);
            out += (i == 0 ? "M " : "L ") + fmt(x) + " " + fmt(y) + " ";
        }
        out += "Z\" ";
        out += style;
        out += "/>\n";
        return out;
    };

    if (d == 2) {
        svg += "<g id=\"ball\">\n";
        svg += path_of(p.vertex_reps(),
                       "fill=\"#6495ed\" fill-opacity=\"0.55\" stroke=\"black\" "
                       "stroke-width=\"1.5\"");
        svg += "</g>\n";
    } else {
        svg += "<g id=\"ball\" stroke=\"black\" stroke-width=\"1.2\">\n";
        const std::vector<Vec> verts = p.all_vertices();
        for (const auto& [a, b] : p.edges()) {
            const auto [x1, y1] = px(verts[a]);
            const auto [x2, y2] = px(verts[b]);
            svg += "<line x1=\"" + fmt(x1) + "\" y1=\"" + fmt(y1) + "\" x2=\"" + fmt(x2) +
                   "\" y2=\"" + fmt(y2) + "\"/>\n";
        }
        svg += "</g>\n";
        svg += "<g id=\"nodes\" fill=\"black\">\n";
        for (const Vec& v : verts) {
            const auto [x, y] = px(v);
            svg += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) + "\" r=\"2.5\"/>\n";
        }
        svg += "</g>\n";
    }

    int idx = 0;
    for (const auto& o : overlays) {
        svg += "<g id=\"overlay" + std::to_string(idx++) + "\">\n";
        if (o.kind == SvgOverlay::Kind::polytope && !o.vertex_reps.empty()) {
            if (d == 2) {
                svg += path_of(o.vertex_reps,
                               "fill=\"gray\" fill-opacity=\"0.15\" stroke=\"gray\" "
                               "stroke-width=\"1\"");
            } else {
                for (const Vec& v : o.vertex_reps) {
                    for (int sgn : {1, -1}) {
                        const auto [x, y] = px(scaled(v, sgn));
                        svg += "<circle cx=\"" + fmt(x) + "\" cy=\"" + fmt(y) +
                               "\" r=\"2\" fill=\"gray\"/>\n";
                    }
                }
            }
        } else if (o.kind == SvgOverlay::Kind::vector && !o.arrow.empty()) {
            const auto [x0, y0] = px(Vec(static_cast<size_t>(d), 0.0));
            const auto [x1, y1] = px(o.arrow);
            svg += "<line x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x1) +
                   "\" y2=\"" + fmt(y1) +
                   "\" stroke=\"black\" stroke-width=\"2\" marker-end=\"none\"/>\n";
            if (!o.label.empty()) {
                svg += "<text x=\"" + fmt(x1 + 4) + "\" y=\"" + fmt(y1) +
                       "\" font-size=\"14\">" + o.label + "</text>\n";
            }
        }
        svg += "</g>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace jsr
