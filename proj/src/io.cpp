#include "omegaprobe/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace omegaprobe {

using nlohmann::json;

namespace {

json point_json(const Point& p) { return json::array({p.x(), p.y()}); }

Point json_point(const json& j) {
    if (!j.is_array() || j.size() != 2) throw InvalidParams("expected a [x, y] pair");
    return Point(j[0].get<double>(), j[1].get<double>());
}

std::string fmt(const char* pattern, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, a);
    return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidParams("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidParams("cannot write " + path);
    out << text;
}

std::string polygon_to_json(const ConvexPolygon& poly) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : poly.vertices()) j["vertices"].push_back(point_json(v));
    j["ccw"] = true;
    return j.dump(2) + "\n";
}

ConvexPolygon polygon_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidParams(std::string("bad polygon json: ") + e.what());
    }
    if (!j.contains("vertices")) throw InvalidParams("polygon json needs a vertices array");
    std::vector<Point> verts;
    for (const auto& v : j["vertices"]) verts.push_back(json_point(v));
    if (j.contains("ccw") && !j["ccw"].get<bool>()) std::reverse(verts.begin(), verts.end());
    return ConvexPolygon(verts);
}

void save_polygon(const std::string& path, const ConvexPolygon& poly) { write_file(path, polygon_to_json(poly)); }
ConvexPolygon load_polygon(const std::string& path) { return polygon_from_json(read_file(path)); }

std::string transcript_to_jsonl(const Transcript& tr) {
    std::string out;
    for (const auto& rec : tr) {
        json j;
        j["t"] = rec.t;
        j["line"] = {{"origin", point_json(rec.line.origin)}, {"direction", point_json(rec.line.direction)}};
        if (rec.result) {
            const auto& o = *rec.result;
            j["result"] = {{"q", point_json(o.q)},   {"dir1", point_json(o.dir1)}, {"dir2", point_json(o.dir2)},
                           {"p1", point_json(o.p1)}, {"p2", point_json(o.p2)},     {"apex_on_polygon", o.apex_on_polygon}};
        } else {
            j["result"] = nullptr;
        }
        out += j.dump() + "\n";
    }
    return out;
}

Transcript transcript_from_jsonl(const std::string& text) {
    Transcript tr;
    std::istringstream in(text);
    std::string row;
    while (std::getline(in, row)) {
        if (row.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(row);
        } catch (const json::exception& e) {
            throw InvalidParams(std::string("bad transcript line: ") + e.what());
        }
        TranscriptRecord rec;
        rec.t = j.at("t").get<int>();
        // keep the stored direction bit for bit; it was unit when written
        rec.line.origin = json_point(j.at("line").at("origin"));
        rec.line.direction = json_point(j.at("line").at("direction"));
        const auto& r = j.at("result");
        if (!r.is_null()) {
            ProbeOutcome o;
            o.q = json_point(r.at("q"));
            o.dir1 = json_point(r.at("dir1"));
            o.dir2 = json_point(r.at("dir2"));
            o.p1 = json_point(r.at("p1"));
            o.p2 = json_point(r.at("p2"));
            o.apex_on_polygon = r.at("apex_on_polygon").get<bool>();
            rec.result = o;
        }
        tr.push_back(rec);
    }
    return tr;
}

void save_transcript(const std::string& path, const Transcript& tr) { write_file(path, transcript_to_jsonl(tr)); }
Transcript load_transcript(const std::string& path) { return transcript_from_jsonl(read_file(path)); }

DirectedLine parse_line(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        try {
            v.push_back(std::stod(part));
        } catch (const std::exception&) {
            throw InvalidParams("bad number in line spec: " + part);
        }
    }
    if (v.size() != 4) throw InvalidParams("line spec must be ox,oy,dx,dy");
    return DirectedLine::make(Point(v[0], v[1]), Vec(v[2], v[3]));
}

std::string cloud_to_csv(const OmegaCloud& cloud) {
    std::string out = "arc,center_x,center_y,radius,start_angle,span,support_a,support_b\n";
    char buf[256];
    for (std::size_t k = 0; k < cloud.arcs.size(); ++k) {
        const auto& a = cloud.arcs[k];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", k, a.center.x(), a.center.y(),
                      a.radius, a.start_angle, a.span(), a.support_a_index, a.support_b_index);
        out += buf;
    }
    return out;
}

std::string cloud_to_svg(const ConvexPolygon& poly, const OmegaCloud& cloud, int samples_per_arc) {
    std::vector<Point> pts;
    for (const auto& a : cloud.arcs)
        for (int s = 0; s <= samples_per_arc; ++s) pts.push_back(a.point_at(a.start_angle + a.span() * s / samples_per_arc));
    for (const auto& v : poly.vertices()) pts.push_back(v);
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (const auto& p : pts) {
        lo_x = std::min(lo_x, p.x());
        lo_y = std::min(lo_y, p.y());
        hi_x = std::max(hi_x, p.x());
        hi_y = std::max(hi_y, p.y());
    }
    double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
    double w = hi_x - lo_x + 2 * pad, h = hi_y - lo_y + 2 * pad;
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt("%.6f", lo_x - pad) + " " +
                      fmt("%.6f", lo_y - pad) + " " + fmt("%.6f", w) + " " + fmt("%.6f", h) + "\">\n";
    // flip y so the picture reads like the plane
    out += "<g transform=\"translate(0," + fmt("%.6f", lo_y + hi_y) + ") scale(1,-1)\">\n";
    out += "<polygon fill=\"#ddd\" stroke=\"#333\" stroke-width=\"" + fmt("%.6f", 0.004 * w) + "\" points=\"";
    for (const auto& v : poly.vertices()) out += fmt("%.6f", v.x()) + "," + fmt("%.6f", v.y()) + " ";
    out += "\"/>\n";
    out += "<polyline fill=\"none\" stroke=\"#c22\" stroke-width=\"" + fmt("%.6f", 0.003 * w) + "\" points=\"";
    for (std::size_t i = 0; i + poly.size() < pts.size(); ++i) out += fmt("%.6f", pts[i].x()) + "," + fmt("%.6f", pts[i].y()) + " ";
    out += "\"/>\n</g>\n</svg>\n";
    return out;
}

}  // namespace omegaprobe
