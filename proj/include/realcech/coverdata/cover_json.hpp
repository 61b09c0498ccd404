#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "realcech/coverdata/cover.hpp"

namespace realcech {

// Cover file format (JSON). Serialization is canonical: keys in a fixed
// order, two-space indentation, trailing newline.
std::string cover_to_json(const CoverDescription& d);
std::string cover_to_json(const C2Cover& c);

// Throws Error(MalformedDescription) on syntax or schema problems.
CoverDescription cover_from_json(std::string_view text);

CoverDescription read_cover_file(const std::filesystem::path& path);
void write_cover_file(const std::filesystem::path& path, const C2Cover& c);

}  // namespace realcech
