#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "group.hpp"

namespace codeg {

/// Contents of a generator file.
///
///     # comment
///     degree 8
///     (1,2,3,4)(5,6,7,8)
///     (1,5,3,7)(2,8,4,6)
///
/// Points are 1-based; "()" is the identity.
struct GeneratorFile {
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

inline GeneratorFile parse_generator_text(const std::string& text) {
  GeneratorFile out;
  bool have_degree = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!have_degree) {
      std::istringstream words(line);
      std::string keyword;
      long long degree = -1;
      if (!(words >> keyword >> degree) || keyword != "degree" || degree < 1)
        throw ParseError("line " + std::to_string(line_no) + ": expected 'degree <n>'");
      out.degree = static_cast<std::size_t>(degree);
      have_degree = true;
      continue;
    }
    try {
      out.generators.push_back(Permutation::parse_cycles(line, out.degree));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_degree) throw ParseError("generator file has no 'degree' line");
  if (out.generators.empty()) throw ParseError("generator file lists no generators");
  return out;
}

inline GeneratorFile read_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open generator file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_generator_text(buffer.str());
}

inline std::string format_generator_file(const Group& g, const std::string& comment = {}) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "degree " + std::to_string(g.degree()) + "\n";
  for (const auto& p : g.generator_perms()) out += p.to_cycle_string() + "\n";
  return out;
}

} // namespace codeg
