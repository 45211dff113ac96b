#include <cstdio>

#include "milnorlab/report.hpp"

namespace milnorlab {

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (first_.back())
      first_.back() = 0;
    else
      out_ += ',';
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(1);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  first_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(1);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  first_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separate();
  value_escaped(k);
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out_ += buf;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  value_escaped(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  separate();
  char buf[24];
  std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(v));
  out_ += buf;
  return *this;
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::values(const std::vector<double>& v) {
  begin_array();
  for (double c : v) value(c);
  return end_array();
}

void JsonWriter::value_escaped(std::string_view s) {
  out_ += '"';
  for (char c : s) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
}

void write_thresholds(JsonWriter& w, const Thresholds& th) {
  w.begin_object();
  w.key("tau").value(th.tau);
  w.key("rel_membership").value(th.rel_membership);
  w.key("rel_probe").value(th.rel_probe);
  w.key("value_ceiling").value(th.value_ceiling);
  w.key("value_floor").value(th.value_floor);
  w.key("level_target").value(th.level_target);
  w.key("proximity").value(th.proximity);
  w.key("persistence").value(th.persistence);
  w.key("local_dim_k").value(th.local_dim_k);
  w.key("pca_rel").value(th.pca_rel);
  w.key("pca_floor").value(th.pca_floor);
  w.key("dedupe").value(th.dedupe);
  w.end_object();
}

void write_cloud(JsonWriter& w, const std::vector<std::vector<double>>& pts, std::size_t dim) {
  w.begin_object();
  w.key("dim").value(dim);
  w.key("count").value(pts.size());
  w.key("data").begin_array();
  for (const auto& p : pts)
    for (double c : p) w.value(c);
  w.end_array();
  w.end_object();
}

void write_isv(JsonWriter& w, const IsvReport& rep) {
  w.begin_object();
  w.key("holds").value(rep.holds);
  w.key("vacuous").value(rep.vacuous);
  w.key("n_points").value(rep.n_points);
  w.key("ceiling_factor").value(rep.ceiling_factor);
  w.key("n_violations").value(rep.violations.size());
  w.end_object();
}

void write_tameness(JsonWriter& w, const TamenessVerdict& v) {
  w.begin_object();
  w.key("kind").value(to_string(v.kind));
  w.key("isv_checked").value(v.isv_checked);
  w.key("isv_holds").value(v.isv_holds);
  w.key("smallest_radius").value(v.smallest_radius);
  w.key("stages").begin_array();
  for (const auto& s : v.stages) {
    w.begin_object();
    w.key("index").value(s.index);
    w.key("radius").value(s.radius);
    w.key("fibre_present").value(s.fibre_present);
    w.key("n_candidates").value(s.n_candidates);
    w.key("n_witnesses").value(s.n_witnesses);
    w.key("obstruction_found").value(s.obstruction_found);
    w.key("obstruction_score");
    if (s.obstruction_found)
      w.value(s.obstruction_score);
    else
      w.null();
    w.end_object();
  }
  w.end_array();
  w.key("witnesses").begin_array();
  for (const auto& wp : v.witnesses) {
    w.begin_object();
    w.key("x").values(wp.x);
    w.key("norm").value(wp.norm);
    w.key("value").value(wp.value);
    w.key("milnor_residual").value(wp.milnor_residual);
    w.key("fiber_anchor").values(wp.fiber_anchor);
    w.key("anchor_distance").value(wp.anchor_distance);
    w.key("anchor_norm").value(wp.anchor_norm);
    w.key("radius").value(wp.radius);
    w.key("stage").value(wp.stage);
    w.end_object();
  }
  w.end_array();
  w.key("limit_estimate").values(v.limit_estimate);
  w.key("trivially_tame_reason").value(v.trivially_tame_reason);
  w.end_object();
}

void write_fiber(JsonWriter& w, const FiberReport& rep) {
  w.begin_object();
  w.key("target").values(rep.target);
  w.key("eps").value(rep.eps);
  w.key("n_seeds").value(rep.n_seeds);
  w.key("n_hits").value(rep.n_hits);
  w.key("n_unique").value(rep.n_unique);
  w.key("no_solutions").value(rep.no_solutions);
  w.key("discrete").value(rep.discrete);
  w.key("linkage_radius").value(rep.linkage_radius);
  w.key("plateau_counts").begin_array();
  for (std::size_t c : rep.plateau_counts) w.value(c);
  w.end_array();
  w.key("plateau").value(rep.plateau);
  w.key("clusters").begin_array();
  for (const auto& c : rep.clusters) {
    w.begin_object();
    w.key("size").value(c.size);
    w.key("dim").value(c.dim);
    w.key("representative").values(c.representative);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

void write_image(JsonWriter& w, const ImageGermReport& rep) {
  w.begin_object();
  w.key("eps1").value(rep.eps1);
  w.key("eps2").value(rep.eps2);
  w.key("magnitudes").values(rep.magnitudes);
  w.key("directions").begin_array();
  for (const auto& d : rep.directions) w.values(d);
  w.end_array();
  w.key("member").begin_array();
  for (std::size_t d = 0; d < rep.directions.size(); ++d) {
    w.begin_array();
    for (std::size_t t = 0; t < rep.magnitudes.size(); ++t) {
      w.begin_array();
      w.value(rep.member_at(d, t, 0));
      w.value(rep.member_at(d, t, 1));
      w.end_array();
    }
    w.end_array();
  }
  w.end_array();
  w.key("unstable").begin_array();
  for (unsigned char u : rep.unstable) w.value(u != 0);
  w.end_array();
  w.key("any_unstable").value(rep.any_unstable);
  w.end_object();
}

void write_inclusion(JsonWriter& w, const InclusionCheck& chk) {
  w.begin_object();
  w.key("name").value(chk.name);
  w.key("n_seeds").value(chk.n_seeds);
  w.key("n_members").value(chk.n_members);
  w.key("n_violations").value(chk.n_violations);
  w.key("tau").value(chk.tau);
  w.key("tau_prime").value(chk.tau_prime);
  w.end_object();
}

void write_violation(JsonWriter& w, const ViolationReport& rep) {
  w.begin_object();
  w.key("n_seeds").value(rep.n_seeds);
  w.key("n_members").value(rep.n_members);
  w.key("n_violations").value(rep.n_violations);
  w.key("vacuous").value(rep.vacuous);
  w.key("tau").value(rep.tau);
  w.key("tau_prime").value(rep.tau_prime);
  w.end_object();
}

void write_product(JsonWriter& w, const ProductReport& rep) {
  w.begin_object();
  w.key("corollary_hypothesis_met").value(rep.corollary_hypothesis_met);
  w.key("inconclusive").value(rep.inconclusive);
  w.key("counts_equal").value(rep.counts_equal);
  w.key("dims_shift").value(rep.dims_shift);
  w.key("consistent").value(rep.consistent);
  w.key("full");
  write_fiber(w, rep.full);
  w.key("reduced");
  write_fiber(w, rep.reduced);
  w.end_object();
}

}  // namespace milnorlab
