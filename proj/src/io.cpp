#include "cheeger/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"

namespace cheeger {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw parse_error("malformed JSON");
    return j;
}

Point parse_point(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error("expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

DomainSpec parse_domain_spec(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object()) throw parse_error("domain spec must be a JSON object");
    DomainSpec spec;
    std::string kind = j.value("kind", "");
    if (kind == "polygon")
        spec.kind = DomainSpec::Kind::polygon;
    else if (kind == "disk")
        spec.kind = DomainSpec::Kind::disk;
    else if (kind == "rectangle")
        spec.kind = DomainSpec::Kind::rectangle;
    else if (kind == "l_shape")
        spec.kind = DomainSpec::Kind::l_shape;
    else
        throw parse_error("unknown domain kind '" + kind + "'");

    if (!j.contains("resolution") || !j["resolution"].is_number_integer())
        throw parse_error("domain spec needs an integer resolution");
    spec.resolution = j["resolution"].get<int>();

    switch (spec.kind) {
        case DomainSpec::Kind::polygon: {
            if (!j.contains("vertices") || !j["vertices"].is_array())
                throw parse_error("polygon spec needs a vertices array");
            for (const auto& v : j["vertices"]) spec.vertices.push_back(parse_point(v));
            break;
        }
        case DomainSpec::Kind::disk: {
            if (j.contains("center")) spec.center = parse_point(j["center"]);
            if (!j.contains("r") || !j["r"].is_number())
                throw parse_error("disk spec needs a radius r");
            spec.r = j["r"].get<double>();
            break;
        }
        case DomainSpec::Kind::rectangle:
        case DomainSpec::Kind::l_shape: {
            if (!j.contains("w") || !j.contains("h"))
                throw parse_error("rectangle/l_shape spec needs w and h");
            spec.w = j["w"].get<double>();
            spec.h = j["h"].get<double>();
            if (j.contains("notch")) spec.notch = j["notch"].get<double>();
            break;
        }
    }
    return spec;
}

DomainSpec load_domain_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open domain spec '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_domain_spec(ss.str());
}

std::string domain_spec_to_json(const DomainSpec& spec) {
    json j;
    switch (spec.kind) {
        case DomainSpec::Kind::polygon: {
            j["kind"] = "polygon";
            json verts = json::array();
            for (const Point& p : spec.vertices) verts.push_back({p.x, p.y});
            j["vertices"] = verts;
            break;
        }
        case DomainSpec::Kind::disk:
            j["kind"] = "disk";
            j["center"] = {spec.center.x, spec.center.y};
            j["r"] = spec.r;
            break;
        case DomainSpec::Kind::rectangle:
            j["kind"] = "rectangle";
            j["w"] = spec.w;
            j["h"] = spec.h;
            break;
        case DomainSpec::Kind::l_shape:
            j["kind"] = "l_shape";
            j["w"] = spec.w;
            j["h"] = spec.h;
            if (spec.notch > 0.0) j["notch"] = spec.notch;
            break;
    }
    j["resolution"] = spec.resolution;
    return j.dump(2);
}

// ── DIMACS ──────────────────────────────────────────────────────────

Network parse_dimacs(std::istream& in) {
    Network net;
    std::string line;
    bool have_problem = false;
    int source = -1, sink = -1;
    std::size_t declared_arcs = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "p") {
            std::string kind;
            std::size_t n = 0, m = 0;
            if (!(ls >> kind >> n >> m) || kind != "max")
                throw parse_error("bad DIMACS problem line");
            net.node_count = static_cast<int>(n);
            declared_arcs = m;
            have_problem = true;
        } else if (tag == "n") {
            int id;
            std::string role;
            if (!(ls >> id >> role)) throw parse_error("bad DIMACS node line");
            if (role == "s")
                source = id - 1;
            else if (role == "t")
                sink = id - 1;
            else
                throw parse_error("bad DIMACS node role '" + role + "'");
        } else if (tag == "a") {
            int u, v;
            double cap;
            if (!(ls >> u >> v >> cap)) throw parse_error("bad DIMACS arc line");
            net.arcs.push_back({u - 1, v - 1, cap});
        } else {
            throw parse_error("unknown DIMACS line tag '" + tag + "'");
        }
    }
    if (!have_problem) throw parse_error("missing DIMACS problem line");
    if (source < 0 || sink < 0) throw parse_error("missing DIMACS source/sink designation");
    if (declared_arcs != net.arcs.size())
        throw parse_error("DIMACS arc count does not match the problem line");
    net.source = source;
    net.sink = sink;
    net.validate();
    return net;
}

Network load_dimacs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open DIMACS file '" + path + "'");
    return parse_dimacs(in);
}

void write_dimacs(std::ostream& out, const Network& net) {
    out << "p max " << net.node_count << ' ' << net.arcs.size() << '\n';
    out << "n " << net.source + 1 << " s\n";
    out << "n " << net.sink + 1 << " t\n";
    out << std::setprecision(17);
    for (const auto& a : net.arcs)
        out << "a " << a.from + 1 << ' ' << a.to + 1 << ' ' << a.capacity << '\n';
}

// ── field CSV ───────────────────────────────────────────────────────

void write_scalar_csv(std::ostream& out, const ScalarField& f, const GridDomain& g) {
    const auto& geom = g.geom();
    out << "x,y,value\n" << std::setprecision(17);
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            out << c.x << ',' << c.y << ',' << f.at(i, j) << '\n';
        }
}

void write_vector_csv(std::ostream& out, const VectorField& f, const GridDomain& g) {
    const auto& geom = g.geom();
    out << "x,y,vx,vy\n" << std::setprecision(17);
    for (int j = 0; j < geom.ny; ++j)
        for (int i = 0; i < geom.nx; ++i) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            out << c.x << ',' << c.y << ',' << f.vx[geom.index(i, j)] << ','
                << f.vy[geom.index(i, j)] << '\n';
        }
}

VectorField read_vector_csv(std::istream& in, const GridDomain& g) {
    const auto& geom = g.geom();
    VectorField f{geom, std::vector<double>(geom.cells(), 0.0),
                  std::vector<double>(geom.cells(), 0.0)};
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty field CSV");
    std::vector<std::uint8_t> seen(geom.cells(), 0);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x, y, vx, vy;
        char c1, c2, c3;
        if (!(ls >> x >> c1 >> y >> c2 >> vx >> c3 >> vy) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            throw parse_error("bad field CSV row: " + line);
        int i = static_cast<int>(std::floor((x - geom.origin.x) / geom.dx));
        int j = static_cast<int>(std::floor((y - geom.origin.y) / geom.dx));
        if (i < 0 || j < 0 || i >= geom.nx || j >= geom.ny || !g.inside(i, j))
            throw dimension_mismatch_error("field CSV row does not land on an interior cell");
        if (seen[geom.index(i, j)])
            throw dimension_mismatch_error("field CSV visits a cell twice");
        seen[geom.index(i, j)] = 1;
        f.vx[geom.index(i, j)] = vx;
        f.vy[geom.index(i, j)] = vy;
        ++rows;
    }
    if (rows != g.interior_count())
        throw dimension_mismatch_error("field CSV has " + std::to_string(rows) +
                                       " rows, grid has " +
                                       std::to_string(g.interior_count()) + " cells");
    return f;
}

// ── result JSON / SVG ───────────────────────────────────────────────

std::string cheeger_result_to_json(const CheegerResult& r, int resolution,
                                   const CutMetricStencil& stencil) {
    json j;
    j["h_lower"] = r.h_lower;
    j["h_upper"] = r.h_upper;
    j["resolution"] = resolution;
    j["stencil"] = {{"neighborhood", stencil.neighborhood},
                    {"axis_weight", stencil.axis_weight},
                    {"diag_weight", stencil.diag_weight}};
    j["iterations"] = r.iterations;
    json set = json::array();
    if (!r.cheeger_set.empty()) {
        // principal component: largest area
        const Polygon* best = &r.cheeger_set.front();
        for (const Polygon& p : r.cheeger_set)
            if (p.area() > best->area()) best = &p;
        for (const Point& p : best->vertices()) set.push_back({p.x, p.y});
    }
    j["cheeger_set"] = set;
    j["certificate_stats"] = {{"max_speed", r.certificate_report.max_speed},
                              {"min_div", r.certificate_report.min_div}};
    return j.dump(2);
}

std::string render_svg(const GridDomain& g, const Polygon& outline,
                       const std::vector<Polygon>& cheeger_set,
                       const VectorField& certificate, const ScalarField& eigenfunction) {
    const auto& geom = g.geom();
    auto [lo, hi] = outline.bounding_box();
    double pad = 2.0 * geom.dx;
    double w = hi.x - lo.x + 2 * pad, h = hi.y - lo.y + 2 * pad;
    double scale = 640.0 / std::max(w, h);
    auto sx = [&](double x) { return (x - lo.x + pad) * scale; };
    auto sy = [&](double y) { return (hi.y + pad - y) * scale; };  // flip y

    std::ostringstream out;
    out << std::setprecision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w * scale
        << "\" height=\"" << h * scale << "\" viewBox=\"0 0 " << w * scale << ' '
        << h * scale << "\">\n";

    double umax = eigenfunction.max();
    if (umax > 0.0) {
        out << "<g shape-rendering=\"crispEdges\">\n";
        for (int j = 0; j < geom.ny; ++j)
            for (int i = 0; i < geom.nx; ++i) {
                if (!g.inside(i, j)) continue;
                double t = eigenfunction.at(i, j) / umax;
                int red = static_cast<int>(255 * t);
                int blue = static_cast<int>(255 * (1.0 - t));
                Point c = geom.center(i, j);
                out << "<rect x=\"" << sx(c.x - 0.5 * geom.dx) << "\" y=\""
                    << sy(c.y + 0.5 * geom.dx) << "\" width=\"" << geom.dx * scale
                    << "\" height=\"" << geom.dx * scale << "\" fill=\"rgb(" << red
                    << ",64," << blue << ")\"/>\n";
            }
        out << "</g>\n";
    }

    auto path = [&](const Polygon& p, const char* stroke, const char* dash) {
        out << "<path d=\"M";
        for (const Point& v : p.vertices()) out << ' ' << sx(v.x) << ' ' << sy(v.y);
        out << " Z\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\"";
        if (dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n";
    };
    path(outline, "black", nullptr);
    for (const Polygon& p : cheeger_set) path(p, "#00aa44", "6,3");

    // subsampled arrows
    int stride = std::max(1, geom.nx / 24);
    for (int j = 0; j < geom.ny; j += stride)
        for (int i = 0; i < geom.nx; i += stride) {
            if (!g.inside(i, j)) continue;
            Point c = geom.center(i, j);
            Point v = certificate.at(i, j);
            double len = norm(v);
            if (len < 1e-6) continue;
            double s = 0.45 * stride * geom.dx;
            Point tip{c.x + s * v.x, c.y + s * v.y};
            out << "<line x1=\"" << sx(c.x) << "\" y1=\"" << sy(c.y) << "\" x2=\""
                << sx(tip.x) << "\" y2=\"" << sy(tip.y)
                << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
            out << "<circle cx=\"" << sx(tip.x) << "\" cy=\"" << sy(tip.y)
                << "\" r=\"1.4\" fill=\"#333333\"/>\n";
        }
    out << "</svg>\n";
    return out.str();
}

}  // namespace cheeger
