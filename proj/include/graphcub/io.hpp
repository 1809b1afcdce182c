#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graphcub/cubature.hpp"
#include "graphcub/frames.hpp"
#include "graphcub/graph.hpp"
#include "graphcub/spectral.hpp"
#include "graphcub/splines.hpp"

namespace graphcub {

using Json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Every double printed with 17 significant digits.
std::string format_double(double x);

/// Serializes with insertion-ordered keys and 17-digit floats, so identical
/// inputs give byte-identical output.
std::string dump_json(const Json& j, int indent = 2);

/// Edge list text using the graph's labels.
std::string to_edge_list(const Graph& g);

/// One label per line; '#' comments and blank lines ignored. Labels are
/// translated to canonical indices of g.
VertexSet parse_vertex_set(std::string_view text, const Graph& g);

/**
 * Vertex-set mini-language, evaluated on g:
 *   all | every-other | remove-every-kth:K | range:A..B | list:FILE | a,b,c
 * Numbers in range/list/comma forms are vertex labels.
 */
VertexSet parse_vertex_spec(std::string_view spec, const Graph& g);

/// CSV "vertex,value" using labels.
std::string signal_to_csv(const Graph& g, const Signal& f);
Signal signal_from_csv(std::string_view text, const Graph& g);

std::string spectrum_to_csv(const EigenDecomposition& d);
Json band_report(const BandlimitedSpace& sp);
Json rule_to_json(const Graph& g, const CubatureRule& r);
Json basis_to_json(const Graph& g, const LagrangianBasis& b);
Json lambda_to_json(const Graph& g, const LambdaReport& r);
Json labels_of(const Graph& g, const VertexSet& s);

} // namespace graphcub
