#include "igc/io.hpp"

#include "igc/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace igc {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        std::size_t s = cell.find_first_not_of(' ');
        out.push_back(s == std::string::npos ? std::string() : cell.substr(s));
    }
    return out;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::int64_t point_id(const PointSet& pts, int v) { return pts[static_cast<std::size_t>(v)].id; }

int index_or_throw(const PointSet& pts, std::int64_t id) {
    int i = pts.index_of(id);
    if (i < 0) throw ParameterError("unknown point id " + std::to_string(id));
    return i;
}

const char* kind_name(RegionKind k) {
    switch (k) {
    case RegionKind::Root: return "root";
    case RegionKind::Component: return "component";
    case RegionKind::Subpath: return "subpath";
    }
    return "?";
}

json number(double v) {
    if (std::isfinite(v)) return v;
    return fmt(v);
}

double as_double(const json& j) {
    if (j.is_string()) return parse_double(j.get<std::string>());
    return j.get<double>();
}

} // namespace

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size()) throw ParameterError("Table: row width does not match header");
    rows.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os) const {
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

json Table::to_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
        json o = json::object();
        for (std::size_t i = 0; i < header.size(); ++i) o[header[i]] = r[i];
        arr.push_back(std::move(o));
    }
    return arr;
}

Table Table::from_csv(std::istream& is) {
    Table t;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (first) {
            t.header = std::move(cells);
            first = false;
        } else {
            t.add(std::move(cells));
        }
    }
    return t;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParameterError("not a number: '" + s + "'");
    return v;
}

PointSet parse_points_csv(std::istream& is) {
    std::vector<Point2D> pts;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto cells = split_csv_line(line);
        if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
        if (lineno == 1 && cells[0] == "id") continue;
        if (cells.size() != 3) throw ParameterError("points csv line " + std::to_string(lineno) + ": expected id,x,y");
        Point2D p;
        try {
            p.id = std::stoll(cells[0]);
        } catch (const std::exception&) {
            throw ParameterError("points csv line " + std::to_string(lineno) + ": bad id");
        }
        p.x = parse_double(cells[1]);
        p.y = parse_double(cells[2]);
        pts.push_back(p);
    }
    return PointSet(std::move(pts));
}

void write_points_csv(std::ostream& os, const PointSet& pts) {
    os << "id,x,y\n";
    for (const auto& p : pts) os << p.id << ',' << fmt(p.x) << ',' << fmt(p.y) << '\n';
}

json points_to_json(const PointSet& pts) {
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
    return {{"points", arr}};
}

PointSet points_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("points");
    std::vector<Point2D> pts;
    for (const auto& e : arr) pts.push_back({e.at("id").get<std::int64_t>(), as_double(e.at("x")), as_double(e.at("y"))});
    return PointSet(std::move(pts));
}

PointSet read_points(const std::string& path) {
    if (ends_with(path, ".json")) return points_from_json(json::parse(read_file(path)));
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open " + path);
    return parse_points_csv(in);
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.w});
    json ids = json::array();
    for (const auto& p : g.points) ids.push_back(p.id);
    return {{"n", g.n()}, {"metric", g.metric.name()}, {"ids", ids}, {"edges", edges}};
}

Graph graph_from_json(const json& j, const PointSet& pts) {
    if (j.at("n").get<std::size_t>() != pts.size()) throw ParameterError("graph json: n does not match the point set");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), as_double(e.at(2))});
    return graph_from_edges(pts, MetricKind::parse(j.at("metric").get<std::string>()), edges);
}

json spanner_to_json(const PlanarSpanner& s) {
    json j = graph_to_json(s.h);
    j["alpha"] = number(s.alpha);
    return j;
}

PlanarSpanner spanner_from_json(const json& j, const PointSet& pts) {
    return {graph_from_json(j, pts), as_double(j.at("alpha"))};
}

json tree_to_json(const DecompTree& t, const PointSet& pts) {
    json regions = json::array();
    struct Level {
        int count = 0;
        std::size_t max_size = 0;
        int max_x = 0;
        double max_balance = 0.0;
    };
    std::map<int, Level> levels;
    for (const auto& r : t.regions) {
        json verts = json::array();
        for (int v : r.vertices) verts.push_back(point_id(pts, v));
        json paths = json::array();
        for (const auto& p : r.paths) {
            json pj = json::array();
            for (int v : p) pj.push_back(point_id(pts, v));
            paths.push_back(pj);
        }
        regions.push_back({{"id", r.id},
                           {"parent", r.parent},
                           {"depth", r.depth},
                           {"kind", kind_name(r.kind)},
                           {"size", r.vertices.size()},
                           {"x_count", r.x_count},
                           {"children", r.children},
                           {"balance", r.balance},
                           {"paths", paths},
                           {"vertices", verts}});
        Level& L = levels[r.depth];
        ++L.count;
        L.max_size = std::max(L.max_size, r.vertices.size());
        L.max_x = std::max(L.max_x, r.x_count);
        L.max_balance = std::max(L.max_balance, r.balance);
    }
    json lv = json::array();
    for (const auto& [d, L] : levels)
        lv.push_back({{"depth", d}, {"regions", L.count}, {"max_size", L.max_size}, {"max_x", L.max_x},
                      {"max_balance", L.max_balance}});
    json X = json::array();
    for (int v : t.X) X.push_back(point_id(pts, v));
    return {{"depth", t.depth}, {"leaves", t.leaf_count()}, {"X", X}, {"levels", lv}, {"regions", regions}};
}

json coreset_to_json(const WeightedCoreset& y, const PointSet& pts) {
    json members = json::array();
    for (std::size_t i = 0; i < y.members.size(); ++i)
        members.push_back({{"id", point_id(pts, y.members[i])}, {"weight", y.weights[i]}});
    const auto& p = y.params;
    return {{"members", members},
            {"params", {{"eps", p.eps}, {"delta", p.delta}, {"z", p.z}, {"k", p.k}, {"m", p.m}, {"seed", p.seed}}},
            {"stage_sizes", y.stage_sizes}};
}

WeightedCoreset coreset_from_json(const json& j, const PointSet& pts) {
    WeightedCoreset y;
    std::vector<std::pair<int, double>> mw;
    for (const auto& m : j.at("members"))
        mw.emplace_back(index_or_throw(pts, m.at("id").get<std::int64_t>()), as_double(m.at("weight")));
    std::sort(mw.begin(), mw.end());
    for (auto [v, w] : mw) {
        y.members.push_back(v);
        y.weights.push_back(w);
    }
    if (j.contains("params")) {
        const json& p = j.at("params");
        y.params.eps = p.value("eps", y.params.eps);
        y.params.delta = p.value("delta", y.params.delta);
        y.params.z = p.value("z", y.params.z);
        y.params.k = p.value("k", y.params.k);
        y.params.m = p.value("m", y.params.m);
        y.params.seed = p.value("seed", y.params.seed);
    }
    if (j.contains("stage_sizes")) y.stage_sizes = j.at("stage_sizes").get<std::vector<std::size_t>>();
    return y;
}

json result_to_json(const ClusteringResult& r, const PointSet& pts) {
    json centers = json::array();
    for (int c : r.centers) centers.push_back(point_id(pts, c));
    return {{"centers", centers},      {"cost", number(r.cost)},
            {"method", r.method},      {"seconds", r.seconds},
            {"coreset_size", r.coreset_size}, {"partitions", r.partitions}};
}

ClusteringResult result_from_json(const json& j, const PointSet& pts) {
    ClusteringResult r;
    for (const auto& c : j.at("centers")) r.centers.push_back(index_or_throw(pts, c.get<std::int64_t>()));
    std::sort(r.centers.begin(), r.centers.end());
    r.cost = as_double(j.at("cost"));
    r.method = j.value("method", std::string());
    r.seconds = j.value("seconds", 0.0);
    r.coreset_size = j.value("coreset_size", std::size_t{0});
    r.partitions = j.value("partitions", std::uint64_t{0});
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParameterError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot write " + path);
    out << contents;
}

} // namespace igc
