#include "hinrisk/metapath.hpp"

#include <algorithm>
#include <fstream>

#include "hinrisk/error.hpp"

namespace hinrisk {

namespace {

const char* kTypeLetters[] = {"E", "P", "C", "N"};
const char* kTypeNames[] = {"enterprise", "person", "commodity", "news"};

std::optional<std::string> letter_to_type_name(char c) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (kTypeLetters[i][0] == c) return std::string(kTypeNames[i]);
  }
  return std::nullopt;
}

std::optional<char> type_name_to_letter(const std::string& name) {
  for (std::size_t i = 0; i < 4; ++i) {
    if (kTypeNames[i] == name) return kTypeLetters[i][0];
  }
  return std::nullopt;
}

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }
  bool eat(const std::string& token) {
    skip_ws();
    if (text.compare(pos, token.size(), token) == 0) {
      pos += token.size();
      return true;
    }
    return false;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
};

TypeId parse_type_token(Cursor& cur, const Schema& schema) {
  cur.skip_ws();
  if (cur.pos >= cur.text.size()) {
    throw Error(Errc::SyntaxError,
                "meta path: expected type letter at position " + std::to_string(cur.pos));
  }
  char c = cur.text[cur.pos];
  auto name = letter_to_type_name(c);
  if (!name) {
    throw Error(Errc::SyntaxError, "meta path: expected one of E,P,C,N at position " +
                                       std::to_string(cur.pos) + ", got '" + std::string(1, c) + "'");
  }
  ++cur.pos;
  auto type = schema.find_object_type(*name);
  if (!type) {
    throw Error(Errc::UnknownType, "meta path: schema has no object type '" + *name + "'");
  }
  return *type;
}

std::string parse_relname(Cursor& cur) {
  cur.skip_ws();
  std::size_t begin = cur.pos;
  while (cur.pos < cur.text.size() &&
         (std::isalnum(static_cast<unsigned char>(cur.text[cur.pos])) || cur.text[cur.pos] == '_')) {
    ++cur.pos;
  }
  if (cur.pos == begin) {
    throw Error(Errc::SyntaxError,
                "meta path: expected relation name at position " + std::to_string(begin));
  }
  return cur.text.substr(begin, cur.pos - begin);
}

}  // namespace

MetaPath parse_metapath(const std::string& text, const Schema& schema) {
  Cursor cur{text};
  MetaPath mp;
  mp.node_types.push_back(parse_type_token(cur, schema));
  std::size_t step = 0;
  while (!cur.done()) {
    ++step;
    if (!cur.eat("-[")) {
      throw Error(Errc::SyntaxError,
                  "meta path: expected '-[' at position " + std::to_string(cur.pos));
    }
    std::string rel_name = parse_relname(cur);
    if (!cur.eat("]->")) {
      throw Error(Errc::SyntaxError,
                  "meta path: expected ']->' at position " + std::to_string(cur.pos));
    }
    TypeId next = parse_type_token(cur, schema);
    TypeId from = mp.node_types.back();
    auto rel = schema.find_relation(rel_name, from, next);
    if (!rel) {
      if (schema.relations_named(rel_name).empty()) {
        throw Error(Errc::UnknownType, "meta path: unknown relation '" + rel_name + "'");
      }
      throw Error(Errc::IncompatibleEndpoint,
                  "meta path: relation '" + rel_name + "' at step " + std::to_string(step) +
                      " does not connect " + schema.object_type(from).name + " to " +
                      schema.object_type(next).name);
    }
    mp.relation_types.push_back(*rel);
    mp.node_types.push_back(next);
  }
  if (mp.relation_types.empty()) {
    throw Error(Errc::SyntaxError, "meta path: at least one relation step required");
  }
  return mp;
}

std::string format_metapath(const MetaPath& mp, const Schema& schema) {
  std::string out;
  for (std::size_t i = 0; i < mp.node_types.size(); ++i) {
    const std::string& tname = schema.object_type(mp.node_types[i]).name;
    auto letter = type_name_to_letter(tname);
    if (!letter) {
      throw Error(Errc::UnknownType, "meta path: object type '" + tname + "' has no DSL letter");
    }
    out += *letter;
    if (i < mp.relation_types.size()) {
      out += "-[" + schema.relation(mp.relation_types[i]).name + "]->";
    }
  }
  return out;
}

std::vector<MetaPath> read_metapath_file(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::Usage, path + ": cannot open meta-paths file");
  }
  std::vector<MetaPath> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos || line[b] == '#') continue;
    try {
      out.push_back(parse_metapath(line, schema));
    } catch (const Error& e) {
      throw Error(e.code(), path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

namespace {

// Lexicographic key for deterministic enumeration output: interleaved
// relation/type names from the root.
std::vector<std::string> path_key(const MetaPath& mp, const Schema& schema) {
  std::vector<std::string> key;
  key.push_back(schema.object_type(mp.node_types[0]).name);
  for (std::size_t i = 0; i < mp.relation_types.size(); ++i) {
    key.push_back(schema.relation(mp.relation_types[i]).name);
    key.push_back(schema.object_type(mp.node_types[i + 1]).name);
  }
  return key;
}

void enumerate_rec(const Schema& schema, MetaPath& current, std::size_t max_relations,
                   std::vector<MetaPath>& out) {
  if (current.length() >= max_relations) return;
  TypeId tail = current.node_types.back();
  for (RelId r : schema.relations_from(tail)) {
    if (!current.relation_types.empty() &&
        schema.inverse(current.relation_types.back()) == r) {
      continue;  // no immediate backtracking
    }
    current.relation_types.push_back(r);
    current.node_types.push_back(schema.relation(r).target);
    out.push_back(current);
    enumerate_rec(schema, current, max_relations, out);
    current.relation_types.pop_back();
    current.node_types.pop_back();
  }
}

}  // namespace

std::vector<MetaPath> enumerate_metapaths(const Schema& schema, TypeId root,
                                          std::size_t max_relations) {
  if (max_relations < 1) {
    throw Error(Errc::Usage, "enumerate_metapaths: max_relations must be >= 1");
  }
  std::vector<MetaPath> out;
  MetaPath current;
  current.node_types.push_back(root);
  enumerate_rec(schema, current, max_relations, out);
  std::sort(out.begin(), out.end(), [&](const MetaPath& a, const MetaPath& b) {
    return path_key(a, schema) < path_key(b, schema);
  });
  return out;
}

std::vector<PathInstance> match_instances(const Hin& hin, NodeIdx start, const MetaPath& mp) {
  if (start >= hin.node_count()) {
    throw Error(Errc::UnknownNode, "match_instances: node index out of range");
  }
  if (hin.node(start).otype != mp.root()) {
    throw Error(Errc::TypeMismatch, "match_instances: start node '" + hin.node(start).id +
                                        "' does not have the meta path root type");
  }
  std::vector<PathInstance> out;
  PathInstance current;
  current.nodes.push_back(start);

  // Iterative DFS over adjacency slices; adjacency order is already sorted.
  struct Frame {
    std::span<const AdjEntry> entries;
    std::size_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back(Frame{hin.adjacency(start, mp.relation_types[0])});
  while (!stack.empty()) {
    Frame& frame = stack.back();
    if (frame.next >= frame.entries.size()) {
      stack.pop_back();
      current.nodes.pop_back();
      if (!current.edges.empty()) current.edges.pop_back();
      continue;
    }
    const AdjEntry& step = frame.entries[frame.next++];
    std::size_t depth = stack.size();  // relation index just taken is depth-1
    if (depth == mp.length()) {
      if (step.neighbor != start) {
        current.nodes.push_back(step.neighbor);
        current.edges.push_back(step.edge);
        out.push_back(current);
        current.nodes.pop_back();
        current.edges.pop_back();
      }
      continue;
    }
    current.nodes.push_back(step.neighbor);
    current.edges.push_back(step.edge);
    stack.push_back(Frame{hin.adjacency(step.neighbor, mp.relation_types[depth])});
  }
  return out;
}

std::vector<NodeIdx> reachable_targets(const Hin& hin, NodeIdx start, const MetaPath& mp) {
  if (start >= hin.node_count()) {
    throw Error(Errc::UnknownNode, "reachable_targets: node index out of range");
  }
  if (hin.node(start).otype != mp.root()) {
    throw Error(Errc::TypeMismatch, "reachable_targets: start node '" + hin.node(start).id +
                                        "' does not have the meta path root type");
  }
  // Layered reachability: a node is in layer i+1 iff some layer-i node reaches
  // it over relation i. Interior revisits impose no constraint, so sets suffice.
  std::vector<NodeIdx> frontier{start};
  for (RelId rel : mp.relation_types) {
    std::vector<NodeIdx> next;
    for (NodeIdx v : frontier) {
      for (const auto& e : hin.adjacency(v, rel)) next.push_back(e.neighbor);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  std::erase(frontier, start);
  std::sort(frontier.begin(), frontier.end(),
            [&](NodeIdx a, NodeIdx b) { return hin.node(a).id < hin.node(b).id; });
  return frontier;
}

MetaPath inverse_metapath(const MetaPath& mp, const Schema& schema) {
  MetaPath out;
  out.node_types.assign(mp.node_types.rbegin(), mp.node_types.rend());
  for (auto it = mp.relation_types.rbegin(); it != mp.relation_types.rend(); ++it) {
    out.relation_types.push_back(schema.inverse(*it));
  }
  return out;
}

}  // namespace hinrisk
