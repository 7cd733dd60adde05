#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "incidence.hpp"

namespace lpd
{

namespace detail
{

inline std::string trim(std::string const &s)
{
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos)
    return {};
  auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Non-empty, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::istream &in)
{
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    line = trim(line);
    if (line.empty() || line.front() == '#')
      continue;
    lines.emplace_back(n, line);
  }
  return lines;
}

inline std::size_t parse_header(std::pair<std::size_t, std::string> const &line,
                                std::string const &keyword)
{
  std::istringstream in(line.second);
  std::string word;
  long long value = -1;
  std::string rest;
  if (!(in >> word >> value) || word != keyword || (in >> rest) || value <= 0)
    fail(ErrorCode::Parse, "line " + std::to_string(line.first) + ": expected \"" + keyword +
                           " N\" with N > 0");
  return static_cast<std::size_t>(value);
}

inline std::string read_file(std::string const &path)
{
  std::ifstream in(path);
  ensure(bool(in), ErrorCode::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace detail

struct GroupFile
{
  std::size_t degree = 0;
  std::vector<Permutation> generators;
};

/// "degree N" followed by one permutation per line in 1-based cycle notation.
inline GroupFile parse_group_file(std::istream &in)
{
  auto lines = detail::content_lines(in);
  ensure(!lines.empty(), ErrorCode::Parse, "missing \"degree N\" line");
  GroupFile file;
  file.degree = detail::parse_header(lines.front(), "degree");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      file.generators.push_back(parse_permutation(lines[i].second, file.degree));
    } catch (Error const &e) {
      fail(e.code(), "line " + std::to_string(lines[i].first) + ": " + e.what());
    }
  }
  if (file.generators.empty())
    file.generators.push_back(Permutation::identity(file.degree));
  return file;
}

inline GroupFile parse_group_text(std::string const &text)
{
  std::istringstream in(text);
  return parse_group_file(in);
}

inline GroupFile read_group_file(std::string const &path)
{ return parse_group_text(detail::read_file(path)); }

inline PermGroup load_group(std::string const &path)
{ return PermGroup(read_group_file(path).generators); }

inline std::string format_group(std::vector<Permutation> const &generators,
                                std::string const &comment = {})
{
  ensure(!generators.empty(), ErrorCode::EmptyGenerators, "no generators to write");
  std::ostringstream out;
  if (!comment.empty())
    out << "# " << comment << '\n';
  out << "degree " << generators.front().degree() << '\n';
  for (auto const &g : generators)
    out << g.to_string() << '\n';
  return out.str();
}

inline std::string format_group(PermGroup const &group, std::string const &comment = {})
{ return format_group(group.generators(), comment); }

/// "points V" followed by one block per line as 1-based point indices.
inline IncidenceStructure parse_design_file(std::istream &in)
{
  auto lines = detail::content_lines(in);
  ensure(!lines.empty(), ErrorCode::Parse, "missing \"points V\" line");
  std::size_t v = detail::parse_header(lines.front(), "points");
  std::vector<Block> blocks;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream row(lines[i].second);
    Block block;
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      long long x = 0;
      try {
        x = std::stoll(token, &used);
      } catch (std::exception const &) {
        used = 0;
      }
      if (used != token.size())
        fail(ErrorCode::Parse, "line " + std::to_string(lines[i].first) + ": bad point \"" +
                               token + "\"");
      if (x < 1 || static_cast<std::size_t>(x) > v)
        fail(ErrorCode::OutOfRange, "line " + std::to_string(lines[i].first) + ": point " +
                                    token + " outside 1.." + std::to_string(v));
      block.push_back(static_cast<Point>(x - 1));
    }
    blocks.push_back(std::move(block));
  }
  return IncidenceStructure(v, std::move(blocks));
}

inline IncidenceStructure parse_design_text(std::string const &text)
{
  std::istringstream in(text);
  return parse_design_file(in);
}

inline IncidenceStructure read_design_file(std::string const &path)
{ return parse_design_text(detail::read_file(path)); }

inline std::string format_design(IncidenceStructure const &design, std::string const &comment = {})
{
  std::ostringstream out;
  if (!comment.empty())
    out << "# " << comment << '\n';
  out << "points " << design.v() << '\n';
  for (auto const &block : design.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i)
      out << (i ? " " : "") << block[i] + 1;
    out << '\n';
  }
  return out.str();
}

inline void write_text(std::string const &path, std::string const &text)
{
  std::ofstream out(path);
  ensure(bool(out), ErrorCode::Parse, "cannot write " + path);
  out << text;
}

} // namespace lpd
