#pragma once

#include "igc/decomposition.hpp"
#include "igc/solver.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace igc {

using json = nlohmann::json;

/// Rows of string cells rendered as CSV or as a JSON array of objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    void write_csv(std::ostream& os) const;
    json to_json() const;
    static Table from_csv(std::istream& is);
};

/// Shortest round-trip decimal form of a double ("inf" for infinity).
std::string fmt(double v);
double parse_double(const std::string& s);

/// CSV with header id,x,y (the header is optional) or JSON, chosen by extension.
PointSet read_points(const std::string& path);
PointSet parse_points_csv(std::istream& is);
void write_points_csv(std::ostream& os, const PointSet& pts);
json points_to_json(const PointSet& pts);
PointSet points_from_json(const json& j);

/// {n, metric, edges:[[u,v,w],...]} in local indices.
json graph_to_json(const Graph& g);
Graph graph_from_json(const json& j, const PointSet& pts);
json spanner_to_json(const PlanarSpanner& s);
PlanarSpanner spanner_from_json(const json& j, const PointSet& pts);

json tree_to_json(const DecompTree& t, const PointSet& pts);

/// members as point ids.
json coreset_to_json(const WeightedCoreset& y, const PointSet& pts);
WeightedCoreset coreset_from_json(const json& j, const PointSet& pts);

json result_to_json(const ClusteringResult& r, const PointSet& pts);
ClusteringResult result_from_json(const json& j, const PointSet& pts);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

} // namespace igc
