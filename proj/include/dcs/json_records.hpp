#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dcs/dcsad.hpp"
#include "dcs/density.hpp"
#include "dcs/difference_graph.hpp"
#include "dcs/new_sea.hpp"
#include "dcs/oracle.hpp"

namespace dcs {

using nlohmann::json;

inline json to_json(const GraphStats& s) {
  return json{{"n", s.n},         {"m_pos", s.m_pos}, {"m_neg", s.m_neg},
              {"max_w", s.max_w}, {"min_w", s.min_w}, {"avg_w", s.avg_w}};
}

inline json subset_record(const DifferenceGraph& dg, const SubsetResult& r) {
  json labels = json::array();
  for (VertexId u : r.vertices) labels.push_back(dg.gd().label(u));
  json rec{{"vertices", labels},
           {"avg_degree_diff", r.density},
           {"edge_density_diff", edge_density_diff(dg, r.vertices)},
           {"is_connected", r.is_connected},
           {"is_positive_clique", r.is_positive_clique},
           {"provenance", to_string(r.provenance)}};
  if (r.ratio_beta)
    rec["ratio_beta"] = *r.ratio_beta;
  else
    rec["ratio_beta"] = nullptr;
  return rec;
}

inline json embedding_record(const DifferenceGraph& dg, const DcsgaResult& r) {
  json support = json::array();
  for (const auto& [u, w] : r.x.weights())
    support.push_back(json::array({dg.gd().label(u), w}));
  return json{{"support", support},
              {"affinity_diff", r.affinity},
              {"edge_density_diff", edge_density_diff(dg, r.x.support())},
              {"kkt_residual", r.kkt_res},
              {"is_positive_clique", r.positive_clique},
              {"inits_used", r.inits_used},
              {"guard_rejections", r.guard_rejections},
              {"converged", r.converged}};
}

inline json oracle_record(const DifferenceGraph& dg, const OracleResult& r,
                          const std::string& measure) {
  json rec{{"measure", measure},
           {"optimum", r.optimum},
           {"instances_enumerated", r.instances_enumerated}};
  if (measure == "ad") {
    json labels = json::array();
    for (VertexId u : r.witness_set) labels.push_back(dg.gd().label(u));
    rec["witness"] = labels;
  } else {
    json support = json::array();
    for (const auto& [u, w] : r.witness_weights)
      support.push_back(json::array({dg.gd().label(u), w}));
    rec["witness"] = support;
    rec["singular_supports"] = r.singular_supports;
  }
  return rec;
}

}  // namespace dcs
