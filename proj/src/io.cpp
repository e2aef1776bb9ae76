#include "groupform/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <regex>
#include <sstream>

#include "groupform/metrics.hpp"
#include "json.hpp"

namespace groupform {

namespace {

using json = nlohmann::json;

// Splits one CSV line; double quotes may wrap a field and "" escapes a quote.
std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(where + ": unterminated quoted field");
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool getline_stripped(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string xml_unescape(const std::string& s) {
  static const std::pair<const char*, char> entities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&apos;", '\''}};
  std::string out;
  for (std::size_t i = 0; i < s.size();) {
    bool matched = false;
    if (s[i] == '&') {
      for (const auto& [name, ch] : entities) {
        const std::string_view entity(name);
        if (s.compare(i, entity.size(), entity) == 0) {
          out += ch;
          i += entity.size();
          matched = true;
          break;
        }
      }
    }
    if (!matched) out += s[i++];
  }
  return out;
}

double parse_double(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(where + ": '" + text + "' is not a number");
  }
  return value;
}

std::size_t parse_index(const std::string& text, const std::string& where) {
  std::size_t value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ParseError(where + ": '" + text + "' is not a non-negative integer");
  }
  return value;
}

struct EdgeRow {
  std::size_t i;
  std::size_t j;
  double weight;
  bool pruned;
};

std::vector<EdgeRow> export_edges(const WeightedGraph& g, const GraphExportOptions& opt) {
  std::vector<EdgeRow> rows;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const double w = g.weight(i, j);
      if (!(w > 0.0)) continue;
      const bool pruned = !(w > opt.tau);
      if (pruned && !opt.keep_pruned) continue;
      rows.push_back({i, j, w, pruned});
    }
  }
  return rows;
}

// Assembles a graph from parsed nodes/edges, rejecting duplicates and loops.
class GraphAssembler {
 public:
  explicit GraphAssembler(std::string source) : source_(std::move(source)) {}

  void add_node(const std::string& key, std::string label) {
    if (!index_.emplace(key, labels_.size()).second) {
      throw ParseError(source_ + ": duplicate node '" + key + "'");
    }
    labels_.push_back(std::move(label));
  }

  void add_edge(const std::string& a, const std::string& b, double w) {
    edges_.push_back({lookup(a), lookup(b), w});
  }

  WeightedGraph finish() const {
    const std::size_t n = labels_.size();
    std::vector<double> weights(n * n, 0.0);
    std::vector<bool> seen(n * n, false);
    for (const auto& [i, j, w] : edges_) {
      if (i == j) throw ParseError(source_ + ": self loop on node " + labels_[i]);
      if (seen[i * n + j]) throw ParseError(source_ + ": duplicate edge " + labels_[i] + "-" + labels_[j]);
      seen[i * n + j] = seen[j * n + i] = true;
      weights[i * n + j] = weights[j * n + i] = w;
    }
    try {
      return WeightedGraph::from_matrix(n, std::move(weights), labels_);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source_ + ": " + e.what());
    }
  }

 private:
  std::size_t lookup(const std::string& key) const {
    auto it = index_.find(key);
    if (it == index_.end()) throw ParseError(source_ + ": edge refers to unknown node '" + key + "'");
    return it->second;
  }

  struct Edge {
    std::size_t i;
    std::size_t j;
    double w;
  };

  std::string source_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::string> labels_;
  std::vector<Edge> edges_;
};

std::string json_key(const json& id) {
  if (id.is_string()) return id.get<std::string>();
  return id.dump();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// Records

std::vector<InteractionRecord> read_records_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<InteractionRecord> records;
  while (getline_stripped(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    if (standardize(line).empty()) continue;
    auto fields = split_csv_line(line, where);
    if (!have_header) {
      if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      std::vector<std::string> header;
      for (const auto& f : fields) header.push_back(standardize(f));
      if (header != std::vector<std::string>{"participant", "group", "task", "code"}) {
        throw ParseError(where + ": expected header 'participant,group,task,code'");
      }
      have_header = true;
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError(where + ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    InteractionRecord r{standardize(fields[0]), standardize(fields[1]), standardize(fields[2]),
                        standardize(fields[3])};
    static const char* names[] = {"participant", "group", "task", "code"};
    const std::string* values[] = {&r.participant, &r.group, &r.task, &r.code};
    for (int k = 0; k < 4; ++k) {
      if (values[k]->empty()) throw ParseError(where + ": empty field '" + names[k] + "'");
    }
    records.push_back(std::move(r));
  }
  if (!have_header) throw ParseError(source + ": missing header");
  if (records.empty()) throw ParseError(source + ": no records");
  return records;
}

std::vector<InteractionRecord> read_records_csv_file(const std::string& path) {
  auto in = open_input(path);
  return read_records_csv(in, path);
}

void write_records_csv(std::ostream& out, const std::vector<InteractionRecord>& records) {
  out << "participant,group,task,code\n";
  for (const auto& r : records) {
    out << csv_field(r.participant) << ',' << csv_field(r.group) << ',' << csv_field(r.task)
        << ',' << csv_field(r.code) << '\n';
  }
}

// ---------------------------------------------------------------------------
// Graph formats

GraphFormat parse_graph_format(const std::string& name) {
  if (name == "node-link" || name == "json") return GraphFormat::node_link;
  if (name == "graphml") return GraphFormat::graphml;
  if (name == "edgelist" || name == "csv") return GraphFormat::edge_list;
  throw std::invalid_argument("unknown graph format '" + name + "'");
}

void write_node_link(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt) {
  json doc;
  doc["directed"] = false;
  doc["multigraph"] = false;
  doc["graph"] = {{"prune_threshold", opt.tau}};
  doc["nodes"] = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    doc["nodes"].push_back({{"id", i}, {"label", g.label(i)}});
  }
  doc["links"] = json::array();
  for (const auto& e : export_edges(g, opt)) {
    json link = {{"source", e.i}, {"target", e.j}, {"weight", e.weight}};
    if (e.pruned) link["pruned"] = true;
    doc["links"].push_back(std::move(link));
  }
  out << doc.dump(1) << '\n';
}

WeightedGraph read_node_link(std::istream& in, const std::string& source) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw ParseError(source + ": missing 'nodes' array");
  }
  GraphAssembler graph(source);
  for (const auto& node : doc["nodes"]) {
    if (!node.is_object() || !node.contains("id")) {
      throw ParseError(source + ": node without 'id'");
    }
    const std::string key = json_key(node["id"]);
    std::string label = key;
    if (node.contains("label") && node["label"].is_string()) label = node["label"].get<std::string>();
    graph.add_node(key, std::move(label));
  }
  const char* link_key = doc.contains("links") ? "links" : "edges";
  if (doc.contains(link_key)) {
    for (const auto& link : doc[link_key]) {
      if (!link.contains("source") || !link.contains("target")) {
        throw ParseError(source + ": link without source/target");
      }
      double w = 1.0;
      if (link.contains("weight")) {
        if (!link["weight"].is_number()) throw ParseError(source + ": non-numeric weight");
        w = link["weight"].get<double>();
      }
      graph.add_edge(json_key(link["source"]), json_key(link["target"]), w);
    }
  }
  return graph.finish();
}

void write_graphml(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <key id=\"pruned\" for=\"edge\" attr.name=\"pruned\" attr.type=\"boolean\">"
         "<default>false</default></key>\n"
      << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << "    <node id=\"n" << i << "\"><data key=\"label\">" << xml_escape(g.label(i))
        << "</data></node>\n";
  }
  std::size_t id = 0;
  for (const auto& e : export_edges(g, opt)) {
    out << "    <edge id=\"e" << id++ << "\" source=\"n" << e.i << "\" target=\"n" << e.j
        << "\"><data key=\"weight\">" << format_double(e.weight) << "</data>";
    if (e.pruned) out << "<data key=\"pruned\">true</data>";
    out << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

WeightedGraph read_graphml(std::istream& in, const std::string& source) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (text.find("<graphml") == std::string::npos) throw ParseError(source + ": not a GraphML document");

  static const std::regex node_re(R"re(<node\s+id="([^"]*)"\s*(/>|>([\s\S]*?)</node>))re");
  static const std::regex edge_re(
      R"re(<edge\b([^>]*?)(/>|>([\s\S]*?)</edge>))re");
  static const std::regex attr_re(R"re((\w+)="([^"]*)")re");
  static const std::regex data_re(R"re(<data\s+key="([^"]*)"\s*>([\s\S]*?)</data>)re");

  auto data_of = [](const std::string& body) {
    std::map<std::string, std::string> values;
    for (auto it = std::sregex_iterator(body.begin(), body.end(), data_re);
         it != std::sregex_iterator(); ++it) {
      values[(*it)[1]] = xml_unescape((*it)[2]);
    }
    return values;
  };

  GraphAssembler graph(source);
  for (auto it = std::sregex_iterator(text.begin(), text.end(), node_re);
       it != std::sregex_iterator(); ++it) {
    const std::string key = xml_unescape((*it)[1]);
    auto data = data_of((*it)[3]);
    graph.add_node(key, data.count("label") ? data["label"] : key);
  }
  for (auto it = std::sregex_iterator(text.begin(), text.end(), edge_re);
       it != std::sregex_iterator(); ++it) {
    std::map<std::string, std::string> attrs;
    const std::string head = (*it)[1];
    for (auto a = std::sregex_iterator(head.begin(), head.end(), attr_re);
         a != std::sregex_iterator(); ++a) {
      attrs[(*a)[1]] = xml_unescape((*a)[2]);
    }
    if (!attrs.count("source") || !attrs.count("target")) {
      throw ParseError(source + ": edge without source/target");
    }
    auto data = data_of((*it)[3]);
    const double w = data.count("weight") ? parse_double(data["weight"], source) : 1.0;
    graph.add_edge(attrs["source"], attrs["target"], w);
  }
  return graph.finish();
}

void write_edge_list(std::ostream& out, const WeightedGraph& g, const GraphExportOptions& opt) {
  out << "source,target,source_label,target_label,weight,pruned\n";
  for (const auto& e : export_edges(g, opt)) {
    out << e.i << ',' << e.j << ',' << csv_field(g.label(e.i)) << ',' << csv_field(g.label(e.j))
        << ',' << format_double(e.weight) << ',' << (e.pruned ? 1 : 0) << '\n';
  }
}

void write_graph(std::ostream& out, const WeightedGraph& g, GraphFormat format,
                 const GraphExportOptions& opt) {
  switch (format) {
    case GraphFormat::node_link: write_node_link(out, g, opt); return;
    case GraphFormat::graphml: write_graphml(out, g, opt); return;
    case GraphFormat::edge_list: write_edge_list(out, g, opt); return;
  }
}

void save_graph_file(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_node_link(out, g, GraphExportOptions{0.0, true});
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

WeightedGraph load_graph_file(const std::string& path) {
  auto in = open_input(path);
  return read_node_link(in, path);
}

// ---------------------------------------------------------------------------
// Tables

GraphStats graph_stats(const WeightedGraph& g, double tau, DegreeMode mode) {
  GraphStats s;
  s.n = g.size();
  s.edges = g.edge_count(tau);
  s.oc = overall_connectivity(g);
  s.var = degree_variance(g, mode, tau);
  s.pl = average_path_length(g, tau);
  s.pd = dominance_penalty(g, mode, tau);
  return s;
}

void write_graph_stats(std::ostream& out, const GraphStats& s) {
  out << "n=" << s.n << "\nedges=" << s.edges << "\noc=" << format_double(s.oc)
      << "\nvar=" << format_double(s.var) << "\npl=" << format_double(s.pl)
      << "\npd=" << format_double(s.pd) << '\n';
}

void write_scores_csv(std::ostream& out, const std::vector<EpisodeScore>& scores) {
  out << "episode,score,oc,var,pl,pd\n";
  for (const auto& s : scores) {
    const auto& b = s.final_breakdown;
    out << s.episode << ',' << format_double(s.score) << ',' << format_double(b.oc) << ','
        << format_double(b.var) << ',' << format_double(b.pl) << ',' << format_double(b.pd)
        << '\n';
  }
}

void write_groups_csv(std::ostream& out, const ClusterAssignment& a) {
  out << "group,participant_ids\n";
  const auto groups = a.groups();
  for (std::size_t c = 0; c < groups.size(); ++c) {
    out << c << ',';
    for (std::size_t k = 0; k < groups[c].size(); ++k) {
      if (k) out << ' ';
      out << groups[c][k].value;
    }
    out << '\n';
  }
}

ClusterAssignment read_groups_csv(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t line_no = 0;
  ClusterAssignment a;
  while (getline_stripped(in, line)) {
    ++line_no;
    const std::string where = source + ":" + std::to_string(line_no);
    if (line_no == 1) {
      if (line != "group,participant_ids") throw ParseError(where + ": expected header");
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, where);
    if (fields.size() != 2) throw ParseError(where + ": expected 2 fields");
    const std::size_t group = parse_index(fields[0], where);
    if (group != a.k) throw ParseError(where + ": groups must be listed in order");
    ++a.k;
    std::istringstream ids(fields[1]);
    std::string id;
    while (ids >> id) a.members.push_back({ParticipantId{parse_index(id, where)}, group});
  }
  return a;
}

}  // namespace groupform
