#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pottszero/graph.hpp"

namespace pottszero {

// Edge-list text: "n q" header, one "u v" line per edge, optional "pin u c" lines.
// Blank lines and '#' comments are ignored. Throws ParseError naming the line.
PartiallyColoredGraph parse_edge_list(std::string_view text);
PartiallyColoredGraph read_edge_list(const std::filesystem::path& path);

std::string format_edge_list(const PartiallyColoredGraph& g);

// Writes through a temporary file and renames it into place.
void write_text_atomically(const std::filesystem::path& path, std::string_view text);

}  // namespace pottszero
