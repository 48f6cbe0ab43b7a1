#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padictree/datum.hpp"
#include "padictree/enumerate.hpp"
#include "padictree/gamma.hpp"
#include "padictree/polysystem.hpp"
#include "padictree/ratgf.hpp"
#include "padictree/realize.hpp"
#include "padictree/trees.hpp"

// JSON documents carry "format": 1. Parse failures raise Errc::ParseError.
namespace padictree {

std::string tree_to_json(const TruncTree& t);
TruncTree tree_from_json(const std::string& text);

// Depth-ranked DOT; edges into nodes whose label starts with thick_tag are drawn thick.
std::string tree_to_dot(const TruncTree& t, const std::optional<std::string>& thick_tag = std::nullopt);

// `default_p` is used when the document has no "p".
std::string system_to_json(const PolySystem& s);
PolySystem system_from_json(const std::string& text, std::optional<Int> default_p = std::nullopt);

std::string cell_to_json(const GammaCell& c);
GammaCell cell_from_json(const std::string& text, int dim);
std::string gammaset_to_json(const GammaSet& s);
GammaSet gammaset_from_json(const std::string& text);

std::string datum_to_json(const TreeDatum& d);
TreeDatum datum_from_json(const std::string& text);

std::string gf_to_json(const RationalGF& f);
RationalGF gf_from_json(const std::string& text);

std::string cloud_to_json(const WitnessCloud& c);
WitnessCloud cloud_from_json(const std::string& text);

std::string statuses_to_json(const LiftResult& r, const Int& p);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace padictree
