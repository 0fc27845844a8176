#pragma once

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "upm/error.hpp"
#include "upm/petri_net.hpp"

namespace upm {

// Reads the place/transition net subset of PNML: place, transition, arc
// (weight 1) under net or nested pages, initialMarking, and the first
// marking of finalmarkings. A transition is silent when it has no nonempty
// name or carries a toolspecific activity of $invisible$. Without a final
// marking, every sink place gets one token and a warning is recorded.
inline PetriNet parse_pnml(const std::string& bytes,
                           std::vector<std::string>* warnings = nullptr) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(bytes);
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& ex) {
    throw Error(ErrorCode::malformed_xml, ex.what());
  }
  const auto pnml = tree.get_child_optional("pnml");
  if (!pnml) throw Error(ErrorCode::no_net, "no pnml element");
  const auto net_node = pnml->get_child_optional("net");
  if (!net_node) throw Error(ErrorCode::no_net, "no net element");

  PetriNet net;
  std::map<std::string, int> place_idx;
  std::map<std::string, int> transition_idx;
  struct RawArc {
    std::string source;
    std::string target;
  };
  std::vector<RawArc> arcs;

  const std::function<void(const pt::ptree&)> walk = [&](const pt::ptree& node) {
    for (const auto& [key, child] : node) {
      if (key == "place") {
        const std::string id = child.get<std::string>("<xmlattr>.id", "");
        if (id.empty() || place_idx.count(id)) {
          throw Error(ErrorCode::malformed_xml, "bad place id '" + id + "'");
        }
        const int p = net.add_place(id);
        place_idx[id] = p;
        const int tokens = child.get<int>("initialMarking.text", 0);
        if (tokens > 0) net.initial_marking.add(p, tokens);
      } else if (key == "transition") {
        const std::string id = child.get<std::string>("<xmlattr>.id", "");
        if (id.empty() || transition_idx.count(id)) {
          throw Error(ErrorCode::malformed_xml, "bad transition id '" + id + "'");
        }
        std::optional<std::string> label;
        const std::string name = child.get<std::string>("name.text", "");
        if (!name.empty()) label = name;
        for (const auto& [tkey, tchild] : child) {
          if (tkey == "toolspecific" &&
              tchild.get<std::string>("<xmlattr>.activity", "") ==
                  "$invisible$") {
            label.reset();
          }
        }
        transition_idx[id] = net.add_transition(id, std::move(label));
      } else if (key == "arc") {
        arcs.push_back({child.get<std::string>("<xmlattr>.source", ""),
                        child.get<std::string>("<xmlattr>.target", "")});
      } else if (key == "page") {
        walk(child);
      }
    }
  };
  walk(*net_node);

  for (const RawArc& arc : arcs) {
    const auto ps = place_idx.find(arc.source);
    const auto pt_ = place_idx.find(arc.target);
    const auto ts = transition_idx.find(arc.source);
    const auto tt = transition_idx.find(arc.target);
    if (ps != place_idx.end() && tt != transition_idx.end()) {
      net.add_arc_pt(ps->second, tt->second);
    } else if (ts != transition_idx.end() && pt_ != place_idx.end()) {
      net.add_arc_tp(ts->second, pt_->second);
    } else {
      throw Error(ErrorCode::disconnected_arc,
                  "arc " + arc.source + " -> " + arc.target +
                      " does not connect a place and a transition");
    }
  }

  bool has_final = false;
  if (const auto finals = net_node->get_child_optional("finalmarkings")) {
    for (const auto& [mkey, marking] : *finals) {
      if (mkey != "marking") continue;
      for (const auto& [pkey, pchild] : marking) {
        if (pkey != "place") continue;
        const std::string idref =
            pchild.get<std::string>("<xmlattr>.idref", "");
        const auto it = place_idx.find(idref);
        if (it == place_idx.end()) {
          throw Error(ErrorCode::malformed_xml,
                      "final marking references unknown place '" + idref + "'");
        }
        const int tokens = pchild.get<int>("text", 0);
        if (tokens > 0) {
          net.final_marking.add(it->second, tokens);
          has_final = true;
        }
      }
      break;  // first marking only
    }
  }
  if (!has_final) {
    std::vector<bool> has_out(net.places.size(), false);
    for (const Transition& t : net.transitions) {
      for (const int p : t.pre) has_out[static_cast<std::size_t>(p)] = true;
    }
    for (std::size_t p = 0; p < net.places.size(); ++p) {
      if (!has_out[p]) net.final_marking.add(static_cast<int>(p), 1);
    }
    if (warnings) {
      warnings->push_back(
          "no final marking declared; assuming one token on each sink place");
    }
  }
  return net;
}

inline std::string write_pnml(const PetriNet& net) {
  namespace pt = boost::property_tree;

  // Original ids are kept when they form one duplicate-free id space.
  bool keep_ids = true;
  std::set<std::string> all_ids;
  for (const std::string& id : net.places) {
    if (id.empty() || !all_ids.insert(id).second) keep_ids = false;
  }
  for (const Transition& t : net.transitions) {
    if (t.id.empty() || !all_ids.insert(t.id).second) keep_ids = false;
  }
  const auto place_id = [&](std::size_t p) {
    return keep_ids ? net.places[p] : "p" + std::to_string(p);
  };
  const auto transition_id = [&](std::size_t t) {
    return keep_ids ? net.transitions[t].id : "t" + std::to_string(t);
  };

  pt::ptree tree;
  pt::ptree& pnml = tree.add_child("pnml", pt::ptree{});
  pnml.put("<xmlattr>.xmlns", "http://www.pnml.org/version-2009/grammar/pnml");
  pt::ptree& n = pnml.add_child("net", pt::ptree{});
  n.put("<xmlattr>.id", "net1");
  n.put("<xmlattr>.type", "http://www.pnml.org/version-2009/grammar/ptnet");
  pt::ptree& page = n.add_child("page", pt::ptree{});
  page.put("<xmlattr>.id", "page1");

  for (std::size_t p = 0; p < net.places.size(); ++p) {
    pt::ptree pl;
    pl.put("<xmlattr>.id", place_id(p));
    pl.put("name.text", net.places[p]);
    const int tokens = net.initial_marking.tokens(static_cast<int>(p));
    if (tokens > 0) pl.put("initialMarking.text", tokens);
    page.add_child("place", pl);
  }
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    const Transition& tr = net.transitions[t];
    pt::ptree tn;
    tn.put("<xmlattr>.id", transition_id(t));
    if (!tr.silent()) tn.put("name.text", *tr.label);
    page.add_child("transition", tn);
  }
  std::size_t arc_count = 0;
  const auto add_arc = [&](const std::string& source, const std::string& target) {
    pt::ptree arc;
    arc.put("<xmlattr>.id", "arc" + std::to_string(arc_count++));
    arc.put("<xmlattr>.source", source);
    arc.put("<xmlattr>.target", target);
    page.add_child("arc", arc);
  };
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    for (const int p : net.transitions[t].pre) {
      add_arc(place_id(static_cast<std::size_t>(p)), transition_id(t));
    }
    for (const int p : net.transitions[t].post) {
      add_arc(transition_id(t), place_id(static_cast<std::size_t>(p)));
    }
  }
  if (!net.final_marking.entries.empty()) {
    pt::ptree marking;
    for (const auto& [p, tokens] : net.final_marking.entries) {
      pt::ptree pl;
      pl.put("<xmlattr>.idref", place_id(static_cast<std::size_t>(p)));
      pl.put("text", tokens);
      marking.add_child("place", pl);
    }
    n.add_child("finalmarkings", pt::ptree{}).add_child("marking", marking);
  }

  std::ostringstream out;
  pt::write_xml(
      out, tree,
      pt::xml_writer_settings<std::string>(' ', 2));
  return out.str();
}

}  // namespace upm
