#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sawlab/graph.hpp"

namespace sawlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPartial = 3;

inline constexpr std::string_view kVersion = "1.0.0";

// Walk length used when --n is omitted, sized so every family finishes in
// seconds.
int default_n(const FamilySpec& family);

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sawlab::cli
