#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "milnorlab/analyzers.hpp"

namespace milnorlab {

// Minimal ordered JSON emitter. Reports must serialize byte-identically for
// identical inputs, with all floats at 17 significant digits; keys are
// written in call order, so the emitted bytes are a pure function of the
// write sequence.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::uint64_t>(v)); }
  JsonWriter& null();
  JsonWriter& values(const std::vector<double>& v);

  const std::string& str() const { return out_; }

 private:
  void separate();
  void value_escaped(std::string_view s);
  std::string out_;
  std::vector<char> first_;  // per open container: nothing emitted yet
  bool after_key_ = false;
};

// Payload serializers shared by the CLI subcommands. Each writes one JSON
// value at the writer's current position.
void write_thresholds(JsonWriter& w, const Thresholds& th);
void write_isv(JsonWriter& w, const IsvReport& rep);
void write_tameness(JsonWriter& w, const TamenessVerdict& v);
void write_fiber(JsonWriter& w, const FiberReport& rep);
void write_image(JsonWriter& w, const ImageGermReport& rep);
void write_inclusion(JsonWriter& w, const InclusionCheck& chk);
void write_violation(JsonWriter& w, const ViolationReport& rep);
void write_product(JsonWriter& w, const ProductReport& rep);

// One named point cloud: {"dim": d, "count": n, "data": [flat row-major]}.
void write_cloud(JsonWriter& w, const std::vector<std::vector<double>>& pts, std::size_t dim);

}  // namespace milnorlab
