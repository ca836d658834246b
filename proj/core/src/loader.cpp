#include "hinrisk/loader.hpp"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include "hinrisk/error.hpp"

namespace hinrisk {

namespace {

std::string loc(const csv::Table& t, const csv::Row& row, const std::string& column) {
  return t.source + ":" + std::to_string(row.line) + " (column " + column + ")";
}

const std::string& field(const csv::Table& t, const csv::Row& row, std::size_t col,
                         const std::string& column) {
  if (col >= row.fields.size()) {
    throw Error(Errc::SyntaxError, loc(t, row, column) + ": missing field");
  }
  return row.fields[col];
}

std::optional<Timestamp> parse_timestamp(const csv::Table& t, const csv::Row& row,
                                         std::size_t col, const std::string& column) {
  const std::string& s = field(t, row, col, column);
  if (s.empty()) return std::nullopt;
  Timestamp value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::SyntaxError, loc(t, row, column) + ": '" + s + "' is not an integer timestamp");
  }
  return value;
}

}  // namespace

Hin load_hin(const Schema& schema, const HinSources& sources) {
  // Nodes first; attributes and labels attach onto them before the graph is built.
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> position;

  const auto& nt = sources.nodes;
  const std::size_t n_id = nt.column("id");
  const std::size_t n_type = nt.column("type");
  const std::size_t n_ts = nt.column("timestamp");
  for (const auto& row : nt.rows) {
    Node node;
    node.id = field(nt, row, n_id, "id");
    if (position.count(node.id)) {
      throw Error(Errc::DuplicateId, loc(nt, row, "id") + ": duplicate node id '" + node.id + "'");
    }
    const std::string& type_name = field(nt, row, n_type, "type");
    auto type = schema.find_object_type(type_name);
    if (!type) {
      throw Error(Errc::UnknownType,
                  loc(nt, row, "type") + ": unknown object type '" + type_name + "'");
    }
    node.otype = *type;
    node.timestamp = parse_timestamp(nt, row, n_ts, "timestamp");
    position.emplace(node.id, nodes.size());
    nodes.push_back(std::move(node));
  }

  const auto& at = sources.attributes;
  const std::size_t a_id = at.column("id");
  const std::size_t a_name = at.column("attr_name");
  const std::size_t a_value = at.column("attr_value");
  for (const auto& row : at.rows) {
    const std::string& id = field(at, row, a_id, "id");
    auto it = position.find(id);
    if (it == position.end()) {
      throw Error(Errc::UnknownNode, loc(at, row, "id") + ": attribute for unknown node '" + id + "'");
    }
    nodes[it->second].attributes[field(at, row, a_name, "attr_name")] =
        field(at, row, a_value, "attr_value");
  }

  const auto& lt = sources.labels;
  const std::size_t l_id = lt.column("id");
  const std::size_t l_risky = lt.column("risky");
  for (const auto& row : lt.rows) {
    const std::string& id = field(lt, row, l_id, "id");
    auto it = position.find(id);
    if (it == position.end()) {
      throw Error(Errc::UnknownNode, loc(lt, row, "id") + ": label for unknown node '" + id + "'");
    }
    const std::string& risky = field(lt, row, l_risky, "risky");
    if (risky != "0" && risky != "1") {
      throw Error(Errc::SyntaxError, loc(lt, row, "risky") + ": risky must be 0 or 1, got '" + risky + "'");
    }
    nodes[it->second].risk_label = (risky == "1");
  }

  // Node types survive the move into the builder; edges resolve against them.
  std::vector<TypeId> node_types(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) node_types[i] = nodes[i].otype;

  Hin::Builder builder(schema);
  for (auto& node : nodes) builder.add_node(std::move(node));

  const auto& et = sources.edges;
  const std::size_t e_id = et.column("id");
  const std::size_t e_src = et.column("src");
  const std::size_t e_dst = et.column("dst");
  const std::size_t e_rel = et.column("relation");
  const std::size_t e_ts = et.column("timestamp");
  for (const auto& row : et.rows) {
    const std::string& eid = field(et, row, e_id, "id");
    const std::string& src = field(et, row, e_src, "src");
    const std::string& dst = field(et, row, e_dst, "dst");
    const std::string& rel_name = field(et, row, e_rel, "relation");
    auto ts = parse_timestamp(et, row, e_ts, "timestamp");

    auto src_it = position.find(src);
    if (src_it == position.end()) {
      throw Error(Errc::DanglingEdge, loc(et, row, "src") + ": edge references absent node '" + src + "'");
    }
    auto dst_it = position.find(dst);
    if (dst_it == position.end()) {
      throw Error(Errc::DanglingEdge, loc(et, row, "dst") + ": edge references absent node '" + dst + "'");
    }
    auto rel = schema.find_relation(rel_name, node_types[src_it->second], node_types[dst_it->second]);
    if (!rel) {
      if (schema.relations_named(rel_name).empty()) {
        throw Error(Errc::UnknownType, loc(et, row, "relation") + ": unknown relation '" + rel_name + "'");
      }
      throw Error(Errc::TypeMismatch, loc(et, row, "relation") + ": relation '" + rel_name +
                                          "' does not connect the endpoint types of '" + src +
                                          "' and '" + dst + "'");
    }
    try {
      builder.add_edge(eid, src, dst, *rel, ts);
    } catch (const Error& e) {
      throw Error(e.code(), loc(et, row, "id") + ": " + e.what());
    }
  }

  return std::move(builder).build();
}

Hin load_hin_files(const Schema& schema, const std::string& nodes_path,
                   const std::string& attributes_path, const std::string& edges_path,
                   const std::string& labels_path) {
  HinSources sources{csv::read_file(nodes_path), csv::read_file(attributes_path),
                     csv::read_file(edges_path), csv::read_file(labels_path)};
  return load_hin(schema, sources);
}

void write_hin_files(const Hin& hin, const std::string& nodes_path,
                     const std::string& attributes_path, const std::string& edges_path,
                     const std::string& labels_path) {
  std::ofstream nf(nodes_path), af(attributes_path), ef(edges_path), lf(labels_path);
  if (!nf || !af || !ef || !lf) {
    throw Error(Errc::Usage, "cannot open output files for writing");
  }
  nf << "id,type,timestamp\n";
  af << "id,attr_name,attr_value\n";
  lf << "id,risky\n";
  for (NodeIdx i = 0; i < hin.node_count(); ++i) {
    const Node& n = hin.node(i);
    nf << csv::escape_field(n.id) << ',' << hin.schema().object_type(n.otype).name << ',';
    if (n.timestamp) nf << *n.timestamp;
    nf << '\n';
    for (const auto& [name, value] : n.attributes) {
      af << csv::escape_field(n.id) << ',' << csv::escape_field(name) << ','
         << csv::escape_field(value) << '\n';
    }
    if (n.risk_label) {
      lf << csv::escape_field(n.id) << ',' << (*n.risk_label ? '1' : '0') << '\n';
    }
  }
  ef << "id,src,dst,relation,timestamp\n";
  for (EdgeIdx i = 0; i < hin.edge_count(); ++i) {
    const Edge& e = hin.edge(i);
    ef << csv::escape_field(e.id) << ',' << csv::escape_field(hin.node(e.src).id) << ','
       << csv::escape_field(hin.node(e.dst).id) << ',' << hin.schema().relation(e.rtype).name << ',';
    if (e.timestamp) ef << *e.timestamp;
    ef << '\n';
  }
}

}  // namespace hinrisk
