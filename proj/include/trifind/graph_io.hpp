#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trifind/graph.hpp"

namespace trifind {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text form: "n <count>" header, then one "u v" line per edge with u < v,
// edges in lexicographic order. Blank lines and '#' comments are ignored on read.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "n " << g.n() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_header = false;
  std::size_t line_no = 0;
  std::optional<GraphBuilder> builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      std::string tag;
      std::string extra;
      if (!(fields >> tag >> n) || tag != "n" || n == 0 || (fields >> extra))
        throw FormatError("edge list: expected header 'n <count>' on line " +
                          std::to_string(line_no));
      have_header = true;
      builder.emplace(n);
      continue;
    }
    long long u = -1, v = -1;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra))
      throw FormatError("edge list: malformed edge on line " + std::to_string(line_no));
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n ||
        static_cast<std::size_t>(v) >= n || u == v)
      throw FormatError("edge list: invalid edge on line " + std::to_string(line_no));
    builder->add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  if (!have_header) throw FormatError("edge list: missing header");
  return std::move(*builder).build();
}

// Binary form, all integers little-endian:
//   bytes 0..7   magic "TRIGRAPH"
//   bytes 8..11  uint32 format version (1)
//   bytes 12..19 uint64 vertex count n
//   then n rows of ceil(n/64) uint64 words; bit v of row u is set iff {u,v} is an edge.
inline constexpr std::array<char, 8> kBinaryMagic = {'T', 'R', 'I', 'G', 'R', 'A', 'P', 'H'};
inline constexpr std::uint32_t kBinaryVersion = 1;

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <class T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw FormatError("binary graph: truncated input");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return static_cast<T>(value);
}

}  // namespace detail

inline void write_binary(std::ostream& out, const Graph& g) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  detail::put_le<std::uint32_t>(out, kBinaryVersion);
  detail::put_le<std::uint64_t>(out, g.n());
  for (Word w : g.raw_rows()) detail::put_le<std::uint64_t>(out, w);
}

inline Graph read_binary(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kBinaryMagic)
    throw FormatError("binary graph: bad magic");
  if (detail::get_le<std::uint32_t>(in) != kBinaryVersion)
    throw FormatError("binary graph: unsupported version");
  const auto n = detail::get_le<std::uint64_t>(in);
  if (n == 0 || n > (std::uint64_t{1} << 24)) throw FormatError("binary graph: bad vertex count");
  const std::size_t words = words_for(static_cast<std::size_t>(n));
  std::vector<Word> rows(static_cast<std::size_t>(n) * words);
  for (auto& w : rows) w = detail::get_le<std::uint64_t>(in);
  GraphBuilder b(static_cast<std::size_t>(n));
  for (Vertex u = 0; u < n; ++u) {
    std::span<const Word> row(rows.data() + static_cast<std::size_t>(u) * words, words);
    for_each_bit(row, [&](std::size_t v) {
      if (v >= n || v == u) throw FormatError("binary graph: invalid adjacency bit");
      b.add_edge(u, static_cast<Vertex>(v));
    });
  }
  Graph g = std::move(b).build();
  if (!std::equal(rows.begin(), rows.end(), g.raw_rows().begin()))
    throw FormatError("binary graph: adjacency is not symmetric");
  return g;
}

inline bool has_binary_extension(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
}

inline void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open " + path + " for writing");
  if (has_binary_extension(path)) {
    write_binary(out, g);
  } else {
    write_edge_list(out, g);
  }
}

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  return has_binary_extension(path) ? read_binary(in) : read_edge_list(in);
}

}  // namespace trifind
