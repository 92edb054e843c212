#include "stixel/wire.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "stixel/detail/binary_io.hpp"
#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel::wire {

namespace {

constexpr double kDepthCells = 65536.0;
constexpr const char* kSchema = "stixel-world";
constexpr int kSchemaVersion = 1;

template <typename T>
T checked(long long value, const char* field) {
  if (value < 0 || value > static_cast<long long>(std::numeric_limits<T>::max())) {
    throw CapacityError(std::string("wire: ") + field + " = " + std::to_string(value) +
                        " does not fit the frame field");
  }
  return static_cast<T>(value);
}

DepthGrid rebuild_grid(GridKind kind, int n_bins, double d_min, double d_max, double a) {
  return kind == GridKind::kLinear ? DepthGrid::linear(n_bins, d_min, d_max)
                                   : DepthGrid::tangential(n_bins, d_min, d_max, a);
}

}  // namespace

std::uint16_t quantize_depth(double depth, double d_min, double d_max) {
  const double cell = std::floor((depth - d_min) / (d_max - d_min) * kDepthCells);
  return static_cast<std::uint16_t>(std::clamp(cell, 0.0, kDepthCells - 1.0));
}

double dequantize_depth(std::uint16_t q, double d_min, double d_max) {
  return d_min + (q + 0.5) / kDepthCells * (d_max - d_min);
}

std::uint8_t quantize_prob(double prob) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(prob, 0.0, 1.0) * 255.0));
}

double dequantize_prob(std::uint8_t q) { return q / 255.0; }

std::vector<std::uint8_t> encode(const StixelWorld& world) {
  const DepthGrid& grid = world.grid;
  const auto count = checked<std::uint32_t>(static_cast<long long>(world.stixels.size()),
                                            "stixel count");
  // Quantize against the range as it will be read back.
  const float d_min_f = static_cast<float>(grid.d_min());
  const float d_max_f = static_cast<float>(grid.d_max());

  detail::ByteWriter out;
  out.bytes().reserve(encoded_size(count));
  out.magic("STX1");
  out.put(kVersion);
  out.put(checked<std::uint16_t>(grid.n_bins(), "n_bins"));
  out.put(d_min_f);
  out.put(d_max_f);
  out.put(static_cast<std::uint8_t>(grid.kind()));
  out.put(checked<std::uint16_t>(world.image.width, "img_width"));
  out.put(checked<std::uint16_t>(world.image.height, "img_height"));
  out.put(count);

  for (const Stixel& s : world.stixels) {
    if (s.width_px != kDefaultStixelWidth) {
      throw CapacityError("wire: only 8 px wide stixels are representable");
    }
    if (!grid.contains(s.depth)) throw ConfigError("wire: stixel depth outside grid range");
    if (!(s.prob >= 0.0 && s.prob <= 1.0)) throw ConfigError("wire: probability outside [0, 1]");
    out.put(checked<std::uint8_t>(s.col, "col"));
    out.put(checked<std::uint16_t>(s.v_top, "v_top"));
    out.put(checked<std::uint16_t>(s.v_bot, "v_bot"));
    out.put(quantize_depth(s.depth, d_min_f, d_max_f));
    out.put(quantize_prob(s.prob));
    if (s.label && *s.label == kNoLabel) {
      throw CapacityError("wire: label 255 is reserved for 'no label'");
    }
    out.put(s.label.value_or(kNoLabel));
  }
  return out.release();
}

StixelWorld decode(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "wire");
  in.expect_magic("STX1");
  const std::size_t version_at = in.offset();
  if (const auto v = in.get<std::uint8_t>("version"); v != kVersion) {
    in.fail("unsupported version " + std::to_string(v), version_at);
  }
  const std::size_t bins_at = in.offset();
  const int n_bins = in.get<std::uint16_t>("n_bins");
  const std::size_t range_at = in.offset();
  const double d_min = in.get<float>("d_min");
  const double d_max = in.get<float>("d_max");
  const std::size_t kind_at = in.offset();
  const auto kind = in.get<std::uint8_t>("grid kind");
  const std::size_t image_at = in.offset();
  const int width = in.get<std::uint16_t>("img_width");
  const int height = in.get<std::uint16_t>("img_height");
  const auto count = in.get<std::uint32_t>("count");

  if (kind > static_cast<std::uint8_t>(GridKind::kTangential)) {
    in.fail("unknown grid kind " + std::to_string(kind), kind_at);
  }
  if (n_bins < 2) in.fail("n_bins must be at least 2", bins_at);
  if (!(d_min >= 0.0) || !(d_min < d_max) || !std::isfinite(d_max)) {
    in.fail("invalid depth range", range_at);
  }
  if (width == 0 || height == 0) in.fail("image size must be positive", image_at);

  StixelWorld world;
  world.grid = rebuild_grid(static_cast<GridKind>(kind), n_bins, d_min, d_max,
                            kDefaultTangentialA);
  world.image = {width, height};
  world.stixels.reserve(std::min<std::size_t>(count, in.remaining() / kStixelBytes));
  for (std::uint32_t i = 0; i < count; ++i) {
    if (in.remaining() < kStixelBytes) {
      in.fail("truncated payload: stixel " + std::to_string(i) + " of " +
                  std::to_string(count) + " is incomplete",
              in.offset() + in.remaining());
    }
    Stixel s;
    s.col = in.get<std::uint8_t>("col");
    s.v_top = in.get<std::uint16_t>("v_top");
    s.v_bot = in.get<std::uint16_t>("v_bot");
    s.depth = dequantize_depth(in.get<std::uint16_t>("depth_q"), d_min, d_max);
    s.prob = dequantize_prob(in.get<std::uint8_t>("prob_q"));
    if (const auto label = in.get<std::uint8_t>("label"); label != kNoLabel) s.label = label;
    world.stixels.push_back(s);
  }
  if (in.remaining() != 0) in.fail("trailing bytes after last stixel", in.offset());
  return world;
}

std::string to_json(const StixelWorld& world) {
  using nlohmann::json;
  json j;
  j["schema"] = kSchema;
  j["version"] = kSchemaVersion;
  j["frame_id"] = world.frame_id;
  j["image"] = {{"width", world.image.width}, {"height", world.image.height}};
  j["grid"] = {{"kind", world.grid.kind() == GridKind::kLinear ? "linear" : "tangential"},
               {"n_bins", world.grid.n_bins()},
               {"d_min", world.grid.d_min()},
               {"d_max", world.grid.d_max()},
               {"a", world.grid.a()}};
  j["calib"] = world.calib ? json::parse(calib_to_json(*world.calib)) : json(nullptr);
  j["stixels"] = json::array();
  for (const Stixel& s : world.stixels) {
    j["stixels"].push_back({{"col", s.col},
                            {"v_top", s.v_top},
                            {"v_bot", s.v_bot},
                            {"depth", s.depth},
                            {"prob", s.prob},
                            {"width_px", s.width_px},
                            {"label", s.label ? json(*s.label) : json(nullptr)}});
  }
  return j.dump(2);
}

StixelWorld from_json(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("world JSON: ") + e.what());
  }
  auto fail = [](const std::string& path, const std::string& what) -> void {
    throw FormatError("world JSON: " + path + ": " + what);
  };
  auto field = [&](const json& obj, const std::string& path, const char* key) -> const json& {
    if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing");
    return obj.at(key);
  };
  auto number = [&](const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
  };
  auto integer = [&](const json& obj, const std::string& path, const char* key) {
    const json& v = field(obj, path, key);
    if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
    return v.get<int>();
  };

  if (!j.is_object()) fail("$", "expected an object");
  const json& schema = field(j, "$", "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    fail("$.schema", "expected \"stixel-world\"");
  }
  if (integer(j, "$", "version") != kSchemaVersion) fail("$.version", "unsupported version");

  StixelWorld world;
  const json& frame_id = field(j, "$", "frame_id");
  if (!frame_id.is_string()) fail("$.frame_id", "expected a string");
  world.frame_id = frame_id.get<std::string>();

  const json& image = field(j, "$", "image");
  world.image = {integer(image, "$.image", "width"), integer(image, "$.image", "height")};

  const json& grid = field(j, "$", "grid");
  const json& kind = field(grid, "$.grid", "kind");
  if (!kind.is_string() || (kind != "linear" && kind != "tangential")) {
    fail("$.grid.kind", "expected \"linear\" or \"tangential\"");
  }
  try {
    world.grid = rebuild_grid(kind == "linear" ? GridKind::kLinear : GridKind::kTangential,
                              integer(grid, "$.grid", "n_bins"), number(grid, "$.grid", "d_min"),
                              number(grid, "$.grid", "d_max"), number(grid, "$.grid", "a"));
  } catch (const FormatError&) {
    throw;
  } catch (const Error& e) {
    fail("$.grid", e.what());
  }

  const json& calib = field(j, "$", "calib");
  if (!calib.is_null()) {
    try {
      world.calib = calib_from_json(calib.dump());
    } catch (const Error& e) {
      fail("$.calib", e.what());
    }
  }

  const json& stixels = field(j, "$", "stixels");
  if (!stixels.is_array()) fail("$.stixels", "expected a list");
  for (std::size_t i = 0; i < stixels.size(); ++i) {
    const std::string path = "$.stixels[" + std::to_string(i) + "]";
    const json& e = stixels[i];
    Stixel s;
    s.col = integer(e, path, "col");
    s.v_top = integer(e, path, "v_top");
    s.v_bot = integer(e, path, "v_bot");
    s.depth = number(e, path, "depth");
    s.prob = number(e, path, "prob");
    s.width_px = integer(e, path, "width_px");
    const json& label = field(e, path, "label");
    if (!label.is_null()) {
      if (!label.is_number_integer() || label.get<int>() < 0 || label.get<int>() > 255) {
        fail(path + ".label", "expected null or an integer in [0, 255]");
      }
      s.label = static_cast<std::uint8_t>(label.get<int>());
    }
    world.stixels.push_back(s);
  }
  return world;
}

StixelWorld load_world(const std::filesystem::path& path) {
  if (path.extension() == ".json") return from_json(read_text(path));
  return decode(read_bytes(path));
}

void save_world(const std::filesystem::path& path, const StixelWorld& world) {
  if (path.extension() == ".json") {
    write_text(path, to_json(world));
  } else {
    write_bytes(path, encode(world));
  }
}

}  // namespace stixel::wire
