#include "stixel/segmentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include <json.hpp>

#include "stixel/errors.hpp"
#include "stixel/io.hpp"

namespace stixel {

namespace {

std::string normalize(std::string_view name) {
  std::string out;
  for (char ch : name) {
    if (ch == '-' || ch == '_') ch = ' ';
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  return out;
}

struct GroupEntry {
  std::string_view name;
  EvalGroup group;
};

constexpr GroupEntry kGroups[] = {
    {"ego vehicle", EvalGroup::kVehicle},
    {"car", EvalGroup::kVehicle},
    {"truck", EvalGroup::kVehicle},
    {"bus", EvalGroup::kVehicle},
    {"other large vehicle", EvalGroup::kVehicle},
    {"trailer", EvalGroup::kVehicle},
    {"pedestrian", EvalGroup::kPedestrian},
    {"pedestrian object", EvalGroup::kPedestrian},
    {"bicycle", EvalGroup::kCyclist},
    {"motorcycle", EvalGroup::kCyclist},
    {"cyclist", EvalGroup::kCyclist},
    {"motorcyclist", EvalGroup::kCyclist},
};

}  // namespace

EvalGroup group_of_class_name(std::string_view name) {
  const std::string key = normalize(name);
  for (const auto& entry : kGroups) {
    if (entry.name == key) return entry.group;
  }
  return EvalGroup::kNotUsed;
}

ClassMap::ClassMap(const std::map<std::uint8_t, std::string>& vocabulary) {
  for (const auto& [label, name] : vocabulary) groups_[label] = group_of_class_name(name);
}

ClassMap ClassMap::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("class map: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FormatError("class map: top level must be an object");
  std::map<std::uint8_t, std::string> vocabulary;
  for (const auto& [key, value] : j.items()) {
    unsigned id = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (ec != std::errc() || ptr != key.data() + key.size() || id > 255) {
      throw FormatError("class map: key '" + key + "' is not a label id in [0, 255]");
    }
    if (!value.is_string()) {
      throw FormatError("class map: value of '" + key + "' must be a class name");
    }
    vocabulary[static_cast<std::uint8_t>(id)] = value.get<std::string>();
  }
  return ClassMap(vocabulary);
}

LabelImage decode_pgm(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
  };
  auto number = [&](const char* field) {
    skip_space();
    const std::size_t start = pos;
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos] - '0');
      if (value > 1'000'000) throw FormatError(std::string("PGM: ") + field + " too large", start);
      ++pos;
    }
    if (pos == start) throw FormatError(std::string("PGM: expected ") + field, start);
    return static_cast<int>(value);
  };

  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw FormatError("PGM: bad magic, expected P5", 0);
  }
  pos = 2;
  LabelImage image;
  image.width = number("width");
  image.height = number("height");
  const int maxval = number("maxval");
  if (image.width <= 0 || image.height <= 0) throw FormatError("PGM: empty image", pos);
  if (maxval <= 0 || maxval > 255) throw FormatError("PGM: maxval must be in [1, 255]", pos);
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw FormatError("PGM: missing whitespace after header", pos);
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height);
  if (bytes.size() - pos < n) throw FormatError("PGM: truncated pixel data", bytes.size());
  image.pixels.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                      bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return image;
}

std::vector<std::uint8_t> encode_pgm(const LabelImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

LabelImage load_pgm(const std::filesystem::path& path) { return decode_pgm(read_bytes(path)); }

std::size_t CoverageGrid::count() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(),
                                                [](std::uint8_t c) { return c != 0; }));
}

CoverageGrid interest_grid(const LabelImage& mask, const ClassMap& classmap, int stride) {
  if (stride <= 0) throw ConfigError("grid stride must be positive");
  if (mask.width <= 0 || mask.height <= 0 || mask.width % stride != 0 ||
      mask.height % stride != 0) {
    throw FormatError("mask of " + std::to_string(mask.width) + "x" +
                      std::to_string(mask.height) + " pixels does not divide into a grid of stride " +
                      std::to_string(stride));
  }
  CoverageGrid grid{mask.height / stride, mask.width / stride, {}};
  grid.cells.resize(static_cast<std::size_t>(grid.rows) * static_cast<std::size_t>(grid.cols));
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      grid.cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(grid.cols) +
                 static_cast<std::size_t>(c)] =
          classmap.is_interest(mask.at(r * stride, c * stride)) ? 1 : 0;
    }
  }
  return grid;
}

CoverageGrid stixel_grid(const StixelWorld& world, int rows, int cols, int stride) {
  CoverageGrid grid{rows, cols, {}};
  grid.cells.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (const Stixel& s : world.stixels) {
    if (s.width_px != stride) {
      throw ConfigError("stixel width " + std::to_string(s.width_px) +
                        " differs from the grid stride " + std::to_string(stride));
    }
    if (s.col < 0 || s.col >= cols) continue;
    const int r_first = std::max(0, (s.v_top + stride - 1) / stride);
    const int r_last = std::min(rows - 1, (s.v_bot - 1) / stride);
    for (int r = r_first; r <= r_last; ++r) {
      grid.cells[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                 static_cast<std::size_t>(s.col)] = 1;
    }
  }
  return grid;
}

std::optional<double> grid_iou(const CoverageGrid& a, const CoverageGrid& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw ConfigError("grid sizes differ");
  std::size_t inter = 0;
  std::size_t uni = 0;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    inter += (a.cells[i] && b.cells[i]) ? 1 : 0;
    uni += (a.cells[i] || b.cells[i]) ? 1 : 0;
  }
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::optional<double> seg_iou(const StixelWorld& world, const LabelImage& mask,
                              const ClassMap& classmap) {
  if (world.image.width != mask.width || world.image.height != mask.height) {
    throw FormatError("mask size differs from the world image size");
  }
  const CoverageGrid truth = interest_grid(mask, classmap);
  return grid_iou(truth, stixel_grid(world, truth.rows, truth.cols));
}

}  // namespace stixel
