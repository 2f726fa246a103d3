#pragma once

#include <map>
#include <optional>
#include <string>

#include "vpg/graph.hpp"
#include "vpg/rep.hpp"

namespace vpg {

// On-disk JSON form of a representation, with optional vertex roles and an
// optional expected intersection graph for audits.
struct RepresentationDocument {
  std::string version = "vpg-rep-1";
  Representation rep;
  std::map<std::string, std::string> roles;
  std::optional<Graph> expected_graph;
};

std::string doc_to_json(const RepresentationDocument& doc);
RepresentationDocument doc_from_json(const std::string& text);

std::string report_to_json(const PropernessReport& rpt);

struct RenderOptions {
  int stroke_width = 2;
  std::map<std::string, std::string> role_colors;  // role -> CSS color
  bool crossing_markers = true;
  int padding = 10;
  int precision = 6;  // decimal digits, rendering only
};

std::string render_svg(const Representation& rep, const RenderOptions& opts = {},
                       const std::map<std::string, std::string>& roles = {});

// Exact decimal rendering of a rational, rounded half-away-from-zero.
std::string decimal_str(const Rational& q, int precision);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace vpg
