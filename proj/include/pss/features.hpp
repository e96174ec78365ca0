// Copyright 2026 The PSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSS_FEATURES_HPP
#define PSS_FEATURES_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pss/errors.hpp"

namespace pss {

// ---------------------------------------------------------------------------
// Program feature interchange format (PFF), schema version 1.
//
// A feature file records everything a clone search needs to know about one
// program: its call graph (local and external functions plus call edges),
// the per-function CFG edge counts, and optional literal features
// (mnemonics, constant strings, external names). Producing these files from
// a disassembler export is out of scope; this module only defines, parses,
// validates and synthesizes them.
// ---------------------------------------------------------------------------

inline constexpr int kFeatureSchemaVersion = 1;

enum class NodeKind { local, external };

struct CallGraphNode {
  std::int64_t id = 0;
  NodeKind kind = NodeKind::local;
  std::optional<std::string> name;

  bool operator==(const CallGraphNode&) const = default;
};

struct CallGraphSpec {
  std::vector<CallGraphNode> nodes;
  // Directed call edges as (caller id, callee id). Parallel edges and
  // self-calls are permitted here; the undirected view collapses them.
  std::vector<std::pair<std::int64_t, std::int64_t>> edges;

  bool operator==(const CallGraphSpec&) const = default;
};

struct FunctionSpec {
  std::int64_t node_id = 0;
  // Number of distinct CFG edges. When a file lists explicit basic-block
  // pairs instead, the parser collapses them to this count.
  std::uint64_t cfg_edge_count = 0;

  bool operator==(const FunctionSpec&) const = default;
};

struct ProgramFeatures {
  std::string program_id;
  std::uint64_t file_size_bytes = 0;
  std::uint64_t disasm_size_bytes = 0;
  CallGraphSpec call_graph;
  std::vector<FunctionSpec> functions;
  std::optional<std::vector<std::string>> mnemonics;
  std::optional<std::set<std::string>> strings;
  std::optional<std::set<std::string>> external_names;

  bool operator==(const ProgramFeatures&) const = default;
};

namespace detail {

using json = nlohmann::json;

inline std::uint64_t require_uint(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v < 0) throw SchemaViolation(path, "must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  throw SchemaViolation(path, "expected an integer");
}

inline std::int64_t require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer() && !j.is_number_unsigned())
    throw SchemaViolation(path, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string require_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaViolation(path, "expected a string");
  return j.get<std::string>();
}

inline const json& require_key(const json& obj, const char* key,
                               const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaViolation(path + "." + key, "missing field");
  return *it;
}

inline void reject_unknown_keys(const json& obj,
                                std::initializer_list<const char*> allowed,
                                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) throw SchemaViolation(path + "." + it.key(), "unknown field");
  }
}

inline std::set<std::string> parse_string_set(const json& j,
                                              const std::string& path) {
  if (!j.is_array()) throw SchemaViolation(path, "expected an array");
  std::set<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.insert(require_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// 64-bit FNV-1a; used for seed mixing and n-gram bucketing.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Deterministic uniform helpers. std:: distributions are implementation
// defined, so synthetic datasets roll their own draws to stay reproducible
// across standard libraries.
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
  return n == 0 ? 0 : rng() % n;
}

inline double rng_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

/// Parses and validates one feature file. Explicit `cfg_edges` lists are
/// collapsed to distinct-pair counts. Throws MalformedJson, SchemaViolation
/// or DanglingReference.
inline ProgramFeatures parse_feature_file(std::string_view bytes) {
  namespace d = detail;
  d::json root;
  try {
    root = d::json::parse(bytes);
  } catch (const d::json::parse_error& e) {
    throw MalformedJson(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaViolation("$", "expected an object");
  d::reject_unknown_keys(root,
                         {"schema_version", "program_id", "file_size_bytes",
                          "disasm_size_bytes", "call_graph", "functions",
                          "mnemonics", "strings", "external_names"},
                         "$");

  if (d::require_uint(d::require_key(root, "schema_version", "$"),
                      "$.schema_version") != kFeatureSchemaVersion)
    throw SchemaViolation("$.schema_version", "unsupported schema version");

  ProgramFeatures p;
  p.program_id =
      d::require_string(d::require_key(root, "program_id", "$"), "$.program_id");
  if (p.program_id.empty())
    throw SchemaViolation("$.program_id", "must be non-empty");
  p.file_size_bytes = d::require_uint(
      d::require_key(root, "file_size_bytes", "$"), "$.file_size_bytes");
  p.disasm_size_bytes = d::require_uint(
      d::require_key(root, "disasm_size_bytes", "$"), "$.disasm_size_bytes");

  // Call graph.
  const auto& cg = d::require_key(root, "call_graph", "$");
  if (!cg.is_object()) throw SchemaViolation("$.call_graph", "expected an object");
  d::reject_unknown_keys(cg, {"nodes", "edges"}, "$.call_graph");
  const auto& nodes = d::require_key(cg, "nodes", "$.call_graph");
  if (!nodes.is_array())
    throw SchemaViolation("$.call_graph.nodes", "expected an array");
  std::map<std::int64_t, NodeKind> kind_of;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::string path = "$.call_graph.nodes[" + std::to_string(i) + "]";
    const auto& n = nodes[i];
    if (!n.is_object()) throw SchemaViolation(path, "expected an object");
    d::reject_unknown_keys(n, {"id", "kind", "name"}, path);
    CallGraphNode node;
    node.id = d::require_int(d::require_key(n, "id", path), path + ".id");
    const std::string kind =
        d::require_string(d::require_key(n, "kind", path), path + ".kind");
    if (kind == "local")
      node.kind = NodeKind::local;
    else if (kind == "external")
      node.kind = NodeKind::external;
    else
      throw SchemaViolation(path + ".kind", "expected \"local\" or \"external\"");
    if (auto it = n.find("name"); it != n.end())
      node.name = d::require_string(*it, path + ".name");
    if (!kind_of.emplace(node.id, node.kind).second)
      throw SchemaViolation(path + ".id", "duplicate node id");
    p.call_graph.nodes.push_back(std::move(node));
  }
  const auto& edges = d::require_key(cg, "edges", "$.call_graph");
  if (!edges.is_array())
    throw SchemaViolation("$.call_graph.edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string path = "$.call_graph.edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2)
      throw SchemaViolation(path, "expected a [src, dst] pair");
    const std::int64_t src = d::require_int(e[0], path + "[0]");
    const std::int64_t dst = d::require_int(e[1], path + "[1]");
    auto src_it = kind_of.find(src);
    if (src_it == kind_of.end())
      throw DanglingReference(src, "edge source is not a call-graph node");
    if (kind_of.find(dst) == kind_of.end())
      throw DanglingReference(dst, "edge target is not a call-graph node");
    if (src_it->second == NodeKind::external)
      throw SchemaViolation(path, "external nodes cannot have outgoing edges");
    p.call_graph.edges.emplace_back(src, dst);
  }

  // Functions.
  const auto& fns = d::require_key(root, "functions", "$");
  if (!fns.is_array()) throw SchemaViolation("$.functions", "expected an array");
  std::set<std::int64_t> seen_fn_nodes;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const std::string path = "$.functions[" + std::to_string(i) + "]";
    const auto& f = fns[i];
    if (!f.is_object()) throw SchemaViolation(path, "expected an object");
    d::reject_unknown_keys(f, {"node_id", "cfg_edge_count", "cfg_edges"}, path);
    FunctionSpec fn;
    fn.node_id =
        d::require_int(d::require_key(f, "node_id", path), path + ".node_id");
    const bool has_count = f.contains("cfg_edge_count");
    const bool has_edges = f.contains("cfg_edges");
    if (has_count == has_edges)
      throw SchemaViolation(path,
                            "exactly one of cfg_edge_count / cfg_edges required");
    if (has_count) {
      fn.cfg_edge_count = d::require_uint(f["cfg_edge_count"], path + ".cfg_edge_count");
    } else {
      const auto& ce = f["cfg_edges"];
      if (!ce.is_array()) throw SchemaViolation(path + ".cfg_edges", "expected an array");
      std::set<std::pair<std::int64_t, std::int64_t>> distinct;
      for (std::size_t j = 0; j < ce.size(); ++j) {
        const std::string epath =
            path + ".cfg_edges[" + std::to_string(j) + "]";
        if (!ce[j].is_array() || ce[j].size() != 2)
          throw SchemaViolation(epath, "expected a [src, dst] pair");
        distinct.emplace(d::require_int(ce[j][0], epath + "[0]"),
                         d::require_int(ce[j][1], epath + "[1]"));
      }
      fn.cfg_edge_count = distinct.size();
    }
    auto kind_it = kind_of.find(fn.node_id);
    if (kind_it == kind_of.end() || kind_it->second != NodeKind::local)
      throw DanglingReference(fn.node_id,
                              "function does not refer to a local call-graph node");
    if (!seen_fn_nodes.insert(fn.node_id).second)
      throw SchemaViolation(path + ".node_id", "duplicate function node id");
    p.functions.push_back(fn);
  }

  if (auto it = root.find("mnemonics"); it != root.end()) {
    if (!it->is_array()) throw SchemaViolation("$.mnemonics", "expected an array");
    std::vector<std::string> mn;
    for (std::size_t i = 0; i < it->size(); ++i)
      mn.push_back(d::require_string((*it)[i],
                                     "$.mnemonics[" + std::to_string(i) + "]"));
    p.mnemonics = std::move(mn);
  }
  if (auto it = root.find("strings"); it != root.end())
    p.strings = d::parse_string_set(*it, "$.strings");
  if (auto it = root.find("external_names"); it != root.end())
    p.external_names = d::parse_string_set(*it, "$.external_names");
  return p;
}

/// Canonical serialization: keys sorted, compact, counts only (never edge
/// lists), optional fields omitted when absent. parse(serialize(p)) == p.
inline std::string serialize_feature_file(const ProgramFeatures& p) {
  namespace d = detail;
  d::json root;
  root["schema_version"] = kFeatureSchemaVersion;
  root["program_id"] = p.program_id;
  root["file_size_bytes"] = p.file_size_bytes;
  root["disasm_size_bytes"] = p.disasm_size_bytes;
  d::json nodes = d::json::array();
  for (const auto& n : p.call_graph.nodes) {
    d::json jn;
    jn["id"] = n.id;
    jn["kind"] = n.kind == NodeKind::local ? "local" : "external";
    if (n.name) jn["name"] = *n.name;
    nodes.push_back(std::move(jn));
  }
  d::json edges = d::json::array();
  for (const auto& [s, t] : p.call_graph.edges)
    edges.push_back(d::json::array({s, t}));
  root["call_graph"] = {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
  d::json fns = d::json::array();
  for (const auto& f : p.functions)
    fns.push_back({{"node_id", f.node_id}, {"cfg_edge_count", f.cfg_edge_count}});
  root["functions"] = std::move(fns);
  if (p.mnemonics) root["mnemonics"] = *p.mnemonics;
  if (p.strings) root["strings"] = *p.strings;
  if (p.external_names) root["external_names"] = *p.external_names;
  return root.dump();
}

// ---------------------------------------------------------------------------
// Synthetic programs
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::array<const char*, 48> kExternalVocab = {
    "printf",  "malloc", "free",    "memcpy",  "memset",   "strlen",
    "strcmp",  "strcpy", "open",    "close",   "read",     "write",
    "socket",  "connect", "send",   "recv",    "fopen",    "fclose",
    "fread",   "fwrite", "exit",    "abort",   "getenv",   "setenv",
    "time",    "clock",  "rand",    "srand",   "qsort",    "bsearch",
    "mmap",    "munmap", "dlopen",  "dlsym",   "select",   "poll",
    "accept",  "bind",   "listen",  "ioctl",   "fcntl",    "stat",
    "fstat",   "unlink", "rename",  "mkdir",   "pipe",     "fork"};

inline constexpr std::array<const char*, 32> kMnemonicVocab = {
    "mov",  "add",  "sub",  "mul", "imul", "div", "push",  "pop",
    "call", "ret",  "jmp",  "je",  "jne",  "jg",  "jl",    "cmp",
    "test", "lea",  "xor",  "and", "or",   "not", "neg",   "shl",
    "shr",  "sar",  "rol",  "inc", "dec",  "nop", "movzx", "movsx"};

inline constexpr std::array<const char*, 24> kStringVocab = {
    "usage:",           "error",         "out of memory", "%s\n",
    "%d",               "rb",            "wb",            "/tmp",
    "config",           "version",       "help",          "input",
    "output",           "invalid argument", "permission denied",
    "not found",        "warning",       "debug",         "info",
    "fatal",            "ok",            "yes",           "no",
    "unknown option"};

}  // namespace detail

/// Builds a deterministic random program: a sparse directed call graph over
/// `n_functions` local nodes (every node reachable from a designated entry
/// node 0) plus a handful of external nodes, per-function CFG edge counts
/// drawn from a program-specific profile, and literal features from fixed
/// vocabularies. Pure function of its arguments.
inline ProgramFeatures generate_synthetic_program(std::uint64_t seed,
                                                  std::size_t n_functions,
                                                  double avg_degree) {
  namespace d = detail;
  if (n_functions < 1) throw InvalidParameter("n_functions must be >= 1");
  if (!(avg_degree > 0.0)) throw InvalidParameter("avg_degree must be > 0");

  std::mt19937_64 rng(seed);
  const std::size_t n = n_functions;

  ProgramFeatures p;
  p.program_id = "synth-s" + std::to_string(seed) + "-n" + std::to_string(n);

  // Local nodes 0..n-1; externals appended after.
  for (std::size_t i = 0; i < n; ++i) {
    CallGraphNode node;
    node.id = static_cast<std::int64_t>(i);
    node.kind = NodeKind::local;
    char buf[24];
    std::snprintf(buf, sizeof(buf), "fn_%06zx", i);
    node.name = buf;
    p.call_graph.nodes.push_back(std::move(node));
  }
  const std::size_t n_ext =
      1 + d::rng_below(rng, std::max<std::uint64_t>(1, n / 4));
  std::vector<std::size_t> vocab_order(d::kExternalVocab.size());
  for (std::size_t i = 0; i < vocab_order.size(); ++i) vocab_order[i] = i;
  for (std::size_t i = vocab_order.size(); i > 1; --i)
    std::swap(vocab_order[i - 1], vocab_order[d::rng_below(rng, i)]);
  std::set<std::string> ext_names;
  for (std::size_t e = 0; e < n_ext; ++e) {
    CallGraphNode node;
    node.id = static_cast<std::int64_t>(n + e);
    node.kind = NodeKind::external;
    node.name = e < vocab_order.size()
                    ? std::string(d::kExternalVocab[vocab_order[e]])
                    : "ext_" + std::to_string(e);
    ext_names.insert(*node.name);
    p.call_graph.nodes.push_back(std::move(node));
  }
  const std::size_t n_total = n + n_ext;

  // Edges: a random attachment backbone keeps every local node reachable
  // from node 0, each external gets at least one caller, and extra edges
  // fill in up to roughly avg_degree per local function.
  std::set<std::pair<std::int64_t, std::int64_t>> edge_set;
  auto add_edge = [&](std::int64_t s, std::int64_t t) {
    if (s != t) edge_set.emplace(s, t);
  };
  for (std::size_t i = 1; i < n; ++i)
    add_edge(static_cast<std::int64_t>(d::rng_below(rng, i)),
             static_cast<std::int64_t>(i));
  for (std::size_t e = 0; e < n_ext; ++e)
    add_edge(static_cast<std::int64_t>(d::rng_below(rng, n)),
             static_cast<std::int64_t>(n + e));
  const auto target_edges =
      static_cast<std::size_t>(std::ceil(avg_degree * static_cast<double>(n)));
  std::size_t attempts = 4 * target_edges + 16;
  while (edge_set.size() < target_edges && attempts-- > 0) {
    add_edge(static_cast<std::int64_t>(d::rng_below(rng, n)),
             static_cast<std::int64_t>(d::rng_below(rng, n_total)));
  }
  p.call_graph.edges.assign(edge_set.begin(), edge_set.end());

  // Per-function CFG edge counts follow a program-specific size/skew profile
  // so unrelated programs get distinguishable sorted-count vectors.
  const double cfg_max = 4.0 + static_cast<double>(d::rng_below(rng, 97));
  static constexpr double kSkews[] = {0.5, 1.0, 2.0, 3.0};
  const double skew = kSkews[d::rng_below(rng, 4)];
  std::uint64_t total_cfg_edges = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = d::rng_unit(rng);
    FunctionSpec f;
    f.node_id = static_cast<std::int64_t>(i);
    f.cfg_edge_count =
        static_cast<std::uint64_t>(std::floor(cfg_max * std::pow(u, skew)));
    total_cfg_edges += f.cfg_edge_count;
    p.functions.push_back(f);
  }

  const std::uint64_t bytes_per_fn = 96 + d::rng_below(rng, 160);
  p.file_size_bytes = 1024 + bytes_per_fn * n + d::rng_below(rng, 1024);
  p.disasm_size_bytes =
      p.file_size_bytes * (3 + d::rng_below(rng, 3)) + d::rng_below(rng, 2048);

  const std::size_t mn_len =
      std::min<std::size_t>(16 + total_cfg_edges / 2 + 4 * n, 50000);
  std::vector<std::string> mnemonics;
  mnemonics.reserve(mn_len);
  for (std::size_t i = 0; i < mn_len; ++i)
    mnemonics.emplace_back(
        d::kMnemonicVocab[d::rng_below(rng, d::kMnemonicVocab.size())]);
  p.mnemonics = std::move(mnemonics);

  std::set<std::string> strings;
  const std::size_t n_shared = 4 + d::rng_below(rng, 12);
  for (std::size_t i = 0; i < n_shared; ++i)
    strings.insert(d::kStringVocab[d::rng_below(rng, d::kStringVocab.size())]);
  const std::size_t n_unique = 2 + d::rng_below(rng, 8);
  for (std::size_t i = 0; i < n_unique; ++i) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "str_%016llx",
                  static_cast<unsigned long long>(rng()));
    strings.insert(buf);
  }
  p.strings = std::move(strings);
  p.external_names = std::move(ext_names);
  return p;
}

/// Derives a clone candidate from `p`: up to ceil(edge_edit_rate * |edges|)
/// call edges added or removed, CFG edge counts scaled by a factor in
/// [1 - cfg_jitter, 1 + cfg_jitter], sizes and literal features jittered at
/// the same rates, program_id suffixed with a clone tag. Deterministic in
/// (p, seed); with both rates zero only the program_id changes.
inline ProgramFeatures perturb_program(const ProgramFeatures& p,
                                       std::uint64_t seed,
                                       double edge_edit_rate,
                                       double cfg_jitter) {
  namespace d = detail;
  if (!(edge_edit_rate >= 0.0 && edge_edit_rate <= 1.0))
    throw InvalidParameter("edge_edit_rate must be in [0, 1]");
  if (!(cfg_jitter >= 0.0 && cfg_jitter <= 1.0))
    throw InvalidParameter("cfg_jitter must be in [0, 1]");

  std::mt19937_64 rng(seed ^ d::fnv1a64(p.program_id));
  ProgramFeatures out = p;
  out.program_id = p.program_id + "-clone-s" + std::to_string(seed);

  std::vector<std::int64_t> locals;
  std::vector<std::int64_t> all_ids;
  for (const auto& n : p.call_graph.nodes) {
    all_ids.push_back(n.id);
    if (n.kind == NodeKind::local) locals.push_back(n.id);
  }

  const auto budget = static_cast<std::size_t>(
      std::ceil(edge_edit_rate * static_cast<double>(p.call_graph.edges.size())));
  auto& edges = out.call_graph.edges;
  for (std::size_t edit = 0; edit < budget; ++edit) {
    const bool remove = !edges.empty() && rng() % 2 == 0;
    if (remove) {
      edges.erase(edges.begin() +
                  static_cast<std::ptrdiff_t>(d::rng_below(rng, edges.size())));
    } else if (!locals.empty() && all_ids.size() > 1) {
      for (int attempt = 0; attempt < 16; ++attempt) {
        const std::int64_t s = locals[d::rng_below(rng, locals.size())];
        const std::int64_t t = all_ids[d::rng_below(rng, all_ids.size())];
        if (s == t) continue;
        if (std::find(edges.begin(), edges.end(), std::make_pair(s, t)) !=
            edges.end())
          continue;
        edges.emplace_back(s, t);
        break;
      }
    }
  }

  for (auto& f : out.functions) {
    const double factor = 1.0 - cfg_jitter + 2.0 * cfg_jitter * d::rng_unit(rng);
    f.cfg_edge_count = static_cast<std::uint64_t>(
        std::llround(static_cast<double>(f.cfg_edge_count) * factor));
  }

  auto scale_size = [&](std::uint64_t v) {
    const double factor = 1.0 - cfg_jitter + 2.0 * cfg_jitter * d::rng_unit(rng);
    return static_cast<std::uint64_t>(
        std::llround(static_cast<double>(v) * factor));
  };
  out.file_size_bytes = scale_size(p.file_size_bytes);
  out.disasm_size_bytes = scale_size(p.disasm_size_bytes);

  if (out.mnemonics && out.mnemonics->size() > 1) {
    auto& mn = *out.mnemonics;
    for (auto& m : mn) {
      if (d::rng_unit(rng) < cfg_jitter * 0.5)
        m = mn[d::rng_below(rng, mn.size())];
    }
  }
  if (out.strings && !out.strings->empty()) {
    std::set<std::string> kept;
    for (const auto& s : *out.strings)
      if (d::rng_unit(rng) >= edge_edit_rate * 0.5) kept.insert(s);
    const auto added = static_cast<std::size_t>(
        std::ceil(edge_edit_rate * 0.5 * static_cast<double>(out.strings->size())));
    for (std::size_t i = 0; i < added; ++i) {
      char buf[24];
      std::snprintf(buf, sizeof(buf), "str_%016llx",
                    static_cast<unsigned long long>(rng()));
      kept.insert(buf);
    }
    out.strings = std::move(kept);
  }
  return out;
}

}  // namespace pss

#endif  // PSS_FEATURES_HPP
