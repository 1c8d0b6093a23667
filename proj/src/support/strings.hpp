#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pheno::util {

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

// RFC 3986 percent-encoding; keeps unreserved characters untouched. Used to
// turn raw clinical codes and patient ids into IRI-safe local names.
std::string percent_encode(std::string_view s);
std::string percent_decode(std::string_view s);

std::string read_file(const std::string& path);              // throws Error(Io)
void write_file(const std::string& path, std::string_view);  // throws Error(Io)

}  // namespace pheno::util
