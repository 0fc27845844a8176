#pragma once

#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "upm/detail/iso8601.hpp"
#include "upm/error.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

enum class XesParseMode { strict, lenient };

// Log attribute under which extension, global, and classifier declarations
// of a parsed file are kept verbatim for re-serialization.
inline constexpr const char* kXesHeaderKey = "__xes_header__";

namespace detail {

namespace xes_keys {
inline constexpr const char* activity = "uncertainty:activity";
inline constexpr const char* time_min = "uncertainty:time:min";
inline constexpr const char* time_max = "uncertainty:time:max";
inline constexpr const char* indeterminacy = "uncertainty:indeterminacy";
inline constexpr const char* concept_name = "concept:name";
inline constexpr const char* timestamp = "time:timestamp";
inline constexpr const char* identity = "identity:id";
}  // namespace xes_keys

inline bool is_xes_attribute_element(const std::string& key) {
  return key == "string" || key == "date" || key == "int" || key == "float" ||
         key == "boolean" || key == "id";
}

inline Timestamp parse_xes_date(const std::string& value,
                                const std::string& key) {
  const auto ms = parse_iso8601(value);
  if (!ms) {
    throw Error(ErrorCode::malformed_xml,
                "bad timestamp '" + value + "' for " + key);
  }
  return *ms;
}

inline AttributeValue parse_attribute_value(const std::string& element,
                                            const std::string& key,
                                            const std::string& value) {
  if (element == "date") return DateValue{parse_xes_date(value, key)};
  if (element == "int") {
    try {
      return static_cast<std::int64_t>(std::stoll(value));
    } catch (...) {
      throw Error(ErrorCode::malformed_xml,
                  "bad int '" + value + "' for " + key);
    }
  }
  if (element == "float") {
    try {
      return std::stod(value);
    } catch (...) {
      throw Error(ErrorCode::malformed_xml,
                  "bad float '" + value + "' for " + key);
    }
  }
  if (element == "boolean") return value == "true";
  return value;  // string, id
}

inline std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

inline void write_attribute(boost::property_tree::ptree& parent,
                            const std::string& key, const AttributeValue& v) {
  namespace pt = boost::property_tree;
  pt::ptree node;
  node.put("<xmlattr>.key", key);
  const char* element = "string";
  if (const auto* s = std::get_if<std::string>(&v)) {
    node.put("<xmlattr>.value", *s);
  } else if (const auto* i = std::get_if<std::int64_t>(&v)) {
    element = "int";
    node.put("<xmlattr>.value", std::to_string(*i));
  } else if (const auto* d = std::get_if<double>(&v)) {
    element = "float";
    node.put("<xmlattr>.value", format_double(*d));
  } else if (const auto* b = std::get_if<bool>(&v)) {
    element = "boolean";
    node.put("<xmlattr>.value", *b ? "true" : "false");
  } else if (const auto* t = std::get_if<DateValue>(&v)) {
    element = "date";
    node.put("<xmlattr>.value", format_utc_ms(t->ms));
  }
  parent.add_child(element, node);
}

// Serializes the children of `wrapper` without the XML declaration line.
inline std::string serialize_fragment(const boost::property_tree::ptree& wrapper) {
  namespace pt = boost::property_tree;
  std::ostringstream out;
  pt::write_xml(out, wrapper, pt::xml_writer_settings<std::string>(' ', 2));
  std::string text = out.str();
  const std::size_t decl_end = text.find("?>");
  if (decl_end != std::string::npos) {
    std::size_t start = decl_end + 2;
    while (start < text.size() && (text[start] == '\n' || text[start] == '\r')) {
      ++start;
    }
    text.erase(0, start);
  }
  return text;
}

struct ParsedEvent {
  bool has_labels = false;
  bool has_interval_min = false;
  bool has_interval_max = false;
  bool has_timestamp = false;
  Timestamp interval_min = 0;
  Timestamp interval_max = 0;
  Timestamp timestamp = 0;
  UncertainEvent event;
};

}  // namespace detail

// XES with an attribute-level uncertainty schema:
//   uncertainty:activity      list of possible labels
//   uncertainty:time:min/max  timestamp interval endpoints
//   uncertainty:indeterminacy event may not have happened
// Plain concept:name and time:timestamp describe certain events. In strict
// mode a point timestamp outside a declared interval is an error; lenient
// mode trusts the interval.
inline UncertainLog parse_xes(const std::string& bytes,
                              XesParseMode mode = XesParseMode::strict) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(bytes);
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& ex) {
    throw Error(ErrorCode::malformed_xml, ex.what());
  }
  const auto log_node = tree.get_child_optional("log");
  if (!log_node) throw Error(ErrorCode::malformed_xml, "no log element");

  UncertainLog log;
  pt::ptree header_wrapper;
  std::set<std::string> case_ids;
  std::size_t trace_counter = 0;

  for (const auto& [key, child] : *log_node) {
    if (key == "extension" || key == "global" || key == "classifier") {
      header_wrapper.add_child(key, child);
      continue;
    }
    if (detail::is_xes_attribute_element(key)) {
      const std::string akey = child.get<std::string>("<xmlattr>.key", "");
      const std::string avalue = child.get<std::string>("<xmlattr>.value", "");
      if (!akey.empty()) {
        log.attributes[akey] = detail::parse_attribute_value(key, akey, avalue);
      }
      continue;
    }
    if (key != "trace") continue;

    UncertainTrace trace;
    ++trace_counter;
    std::size_t event_counter = 0;
    std::set<std::string> event_ids;
    for (const auto& [tkey, tchild] : child) {
      if (detail::is_xes_attribute_element(tkey)) {
        const std::string akey = tchild.get<std::string>("<xmlattr>.key", "");
        const std::string avalue = tchild.get<std::string>("<xmlattr>.value", "");
        if (akey == detail::xes_keys::concept_name) {
          trace.case_id = avalue;
        } else if (!akey.empty()) {
          trace.attributes[akey] =
              detail::parse_attribute_value(tkey, akey, avalue);
        }
        continue;
      }
      if (tkey != "event") continue;

      detail::ParsedEvent p;
      ++event_counter;
      std::string concept_label;
      bool has_concept = false;
      for (const auto& [ekey, echild] : tchild) {
        if (ekey == "list" &&
            echild.get<std::string>("<xmlattr>.key", "") ==
                detail::xes_keys::activity) {
          const auto collect = [&](const pt::ptree& holder) {
            for (const auto& [vkey, vchild] : holder) {
              if (vkey == "string") {
                p.event.labels.insert(
                    vchild.get<std::string>("<xmlattr>.value", ""));
              } else if (vkey == "values") {
                for (const auto& [wkey, wchild] : vchild) {
                  if (wkey == "string") {
                    p.event.labels.insert(
                        wchild.get<std::string>("<xmlattr>.value", ""));
                  }
                }
              }
            }
          };
          collect(echild);
          p.has_labels = true;
          if (p.event.labels.empty()) {
            throw Error(ErrorCode::empty_label_set,
                        "empty uncertainty:activity list");
          }
          continue;
        }
        if (!detail::is_xes_attribute_element(ekey)) continue;
        const std::string akey = echild.get<std::string>("<xmlattr>.key", "");
        const std::string avalue = echild.get<std::string>("<xmlattr>.value", "");
        if (akey == detail::xes_keys::concept_name) {
          concept_label = avalue;
          has_concept = true;
        } else if (akey == detail::xes_keys::timestamp) {
          p.timestamp = detail::parse_xes_date(avalue, akey);
          p.has_timestamp = true;
        } else if (akey == detail::xes_keys::time_min) {
          p.interval_min = detail::parse_xes_date(avalue, akey);
          p.has_interval_min = true;
        } else if (akey == detail::xes_keys::time_max) {
          p.interval_max = detail::parse_xes_date(avalue, akey);
          p.has_interval_max = true;
        } else if (akey == detail::xes_keys::indeterminacy) {
          p.event.indeterminate = avalue == "true";
        } else if (akey == detail::xes_keys::identity) {
          p.event.id = avalue;
        } else if (!akey.empty()) {
          p.event.extra_attributes[akey] =
              detail::parse_attribute_value(ekey, akey, avalue);
        }
      }

      if (!p.has_labels) {
        if (!has_concept) {
          throw Error(ErrorCode::missing_activity,
                      "event without concept:name or uncertainty:activity");
        }
        p.event.labels.insert(concept_label);
      }
      if (p.has_interval_min != p.has_interval_max) {
        throw Error(ErrorCode::invalid_interval,
                    "only one endpoint of the timestamp interval is present");
      }
      if (p.has_interval_min) {
        if (p.interval_min > p.interval_max) {
          throw Error(ErrorCode::invalid_interval,
                      "uncertainty:time:min is after uncertainty:time:max");
        }
        if (mode == XesParseMode::strict && p.has_timestamp &&
            (p.timestamp < p.interval_min || p.timestamp > p.interval_max)) {
          throw Error(ErrorCode::conflicting_timestamps,
                      "time:timestamp lies outside the declared interval");
        }
        p.event.time = TimeInterval(p.interval_min, p.interval_max);
      } else if (p.has_timestamp) {
        p.event.time = TimeInterval(p.timestamp);
      } else {
        throw Error(ErrorCode::missing_timestamp,
                    "event without time:timestamp or interval");
      }
      if (p.event.id.empty()) {
        p.event.id = "e" + std::to_string(event_counter);
      }
      if (!event_ids.insert(p.event.id).second) {
        throw Error(ErrorCode::duplicate_event_id,
                    "event id '" + p.event.id + "' appears twice in a trace");
      }
      trace.events.push_back(std::move(p.event));
    }
    if (trace.case_id.empty()) {
      trace.case_id = "c" + std::to_string(trace_counter);
    }
    if (!case_ids.insert(trace.case_id).second) {
      throw Error(ErrorCode::duplicate_case_id,
                  "case id '" + trace.case_id + "' appears twice");
    }
    log.traces.push_back(std::move(trace));
  }

  if (!header_wrapper.empty()) {
    log.attributes[kXesHeaderKey] = detail::serialize_fragment(header_wrapper);
  }
  return log;
}

inline std::string write_xes(const UncertainLog& log) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  pt::ptree& lg = tree.add_child("log", pt::ptree{});
  lg.put("<xmlattr>.xes.version", "1849.2016");
  lg.put("<xmlattr>.xes.features", "nested-attributes");

  const auto header = log.attributes.find(kXesHeaderKey);
  if (header != log.attributes.end() &&
      std::holds_alternative<std::string>(header->second)) {
    pt::ptree wrapper;
    std::istringstream in("<h>" + std::get<std::string>(header->second) +
                          "</h>");
    try {
      pt::read_xml(in, wrapper, pt::xml_parser::trim_whitespace);
      for (const auto& [key, child] : wrapper.get_child("h")) {
        lg.add_child(key, child);
      }
    } catch (const pt::xml_parser_error&) {
      // unusable header fragment, fall through to the declarations below
    }
  } else {
    const auto declare = [&](const char* name, const char* prefix,
                             const char* uri) {
      pt::ptree ext;
      ext.put("<xmlattr>.name", name);
      ext.put("<xmlattr>.prefix", prefix);
      ext.put("<xmlattr>.uri", uri);
      lg.add_child("extension", ext);
    };
    declare("Concept", "concept",
            "http://www.xes-standard.org/concept.xesext");
    declare("Time", "time", "http://www.xes-standard.org/time.xesext");
    declare("Identity", "identity",
            "http://www.xes-standard.org/identity.xesext");
  }
  for (const auto& [key, value] : log.attributes) {
    if (key == kXesHeaderKey) continue;
    detail::write_attribute(lg, key, value);
  }

  for (const UncertainTrace& trace : log.traces) {
    pt::ptree tr;
    detail::write_attribute(tr, detail::xes_keys::concept_name, trace.case_id);
    for (const auto& [key, value] : trace.attributes) {
      detail::write_attribute(tr, key, value);
    }
    for (const UncertainEvent& e : trace.events) {
      if (e.labels.empty()) {
        throw Error(ErrorCode::empty_label_set,
                    "event " + e.id + " has no possible activity label");
      }
      pt::ptree ev;
      if (!e.id.empty()) {
        detail::write_attribute(ev, detail::xes_keys::identity, e.id);
      }
      detail::write_attribute(ev, detail::xes_keys::concept_name,
                              *e.labels.begin());
      if (e.labels.size() > 1) {
        pt::ptree list;
        list.put("<xmlattr>.key", detail::xes_keys::activity);
        for (const std::string& label : e.labels) {
          pt::ptree item;
          item.put("<xmlattr>.key", "value");
          item.put("<xmlattr>.value", label);
          list.add_child("string", item);
        }
        ev.add_child("list", list);
      }
      detail::write_attribute(ev, detail::xes_keys::timestamp,
                              DateValue{e.time.t_min});
      if (!e.time.is_certain()) {
        detail::write_attribute(ev, detail::xes_keys::time_min,
                                DateValue{e.time.t_min});
        detail::write_attribute(ev, detail::xes_keys::time_max,
                                DateValue{e.time.t_max});
      }
      if (e.indeterminate) {
        detail::write_attribute(ev, detail::xes_keys::indeterminacy, true);
      }
      for (const auto& [key, value] : e.extra_attributes) {
        detail::write_attribute(ev, key, value);
      }
      tr.add_child("event", ev);
    }
    lg.add_child("trace", tr);
  }

  std::ostringstream out;
  pt::write_xml(out, tree, pt::xml_writer_settings<std::string>(' ', 2));
  return out.str();
}

}  // namespace upm
