#include "pauli/dump.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "pauli/errors.hpp"
#include "pauli/format.hpp"

namespace pauli {

namespace {

static_assert(std::endian::native == std::endian::little, "dump I/O assumes a little-endian host");

const char* const kKeys[] = {"format", "kind", "dim", "nx", "ny", "nz", "hx", "hy",
                             "hz",     "ox",   "oy",  "oz", "time", "components"};

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& field, const std::string& what) {
  throw IoError(path.string() + ": " + field + ": " + what);
}

double parse_real(const std::filesystem::path& path, const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) fail(path, key, "trailing characters in '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(path, key, "not a number: '" + text + "'");
  }
}

std::size_t parse_count(const std::filesystem::path& path, const std::string& key, const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(path, key, "not a non-negative integer: '" + text + "'");
  return static_cast<std::size_t>(std::stoull(text));
}

}  // namespace

void write_dump(const std::filesystem::path& path, const SpinorField& f, double time) {
  const Grid& g = f.grid;
  std::ostringstream header;
  header << "format = " << kDumpFormat << "\n"
         << "kind = spinor\n"
         << "dim = " << g.dim() << "\n"
         << "nx = " << g.n(0) << "\nny = " << g.n(1) << "\nnz = " << g.n(2) << "\n"
         << "hx = " << format_real(g.h(0)) << "\nhy = " << format_real(g.h(1)) << "\nhz = " << format_real(g.h(2))
         << "\n"
         << "ox = " << format_real(g.origin()[0]) << "\noy = " << format_real(g.origin()[1])
         << "\noz = " << format_real(g.origin()[2]) << "\n"
         << "time = " << format_real(time) << "\n"
         << "components = 2\n\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  const std::string h = header.str();
  out.write(h.data(), static_cast<std::streamsize>(h.size()));
  for (int c = 0; c < 2; ++c)
    out.write(reinterpret_cast<const char*>(f.comp[c].data()),
              static_cast<std::streamsize>(f.comp[c].size() * sizeof(Complex)));
  if (!out) throw IoError(path.string() + ": write failed");
}

Snapshot read_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": cannot open");

  std::map<std::string, std::string> values;
  std::vector<std::string> order;
  std::string line;
  bool terminated = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      terminated = true;
      break;
    }
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) fail(path, "header", "malformed line '" + line + "'");
    const std::string key = line.substr(0, eq);
    if (values.count(key)) fail(path, key, "duplicate key");
    values[key] = line.substr(eq + 3);
    order.push_back(key);
  }
  if (!terminated) fail(path, "header", "missing blank line before payload");

  const std::size_t expected = std::size(kKeys);
  for (std::size_t i = 0; i < expected; ++i) {
    if (i >= order.size()) fail(path, kKeys[i], "missing");
    if (order[i] != kKeys[i]) fail(path, kKeys[i], "expected here, found '" + order[i] + "'");
  }
  if (order.size() > expected) fail(path, order[expected], "unknown key");

  if (values["format"] != kDumpFormat) fail(path, "format", "unsupported '" + values["format"] + "'");
  if (values["kind"] != "spinor") fail(path, "kind", "unsupported '" + values["kind"] + "'");
  if (values["components"] != "2") fail(path, "components", "expected 2, found '" + values["components"] + "'");

  const std::size_t dim = parse_count(path, "dim", values["dim"]);
  const std::array<std::size_t, 3> n{parse_count(path, "nx", values["nx"]), parse_count(path, "ny", values["ny"]),
                                     parse_count(path, "nz", values["nz"])};
  const Vec3 h{parse_real(path, "hx", values["hx"]), parse_real(path, "hy", values["hy"]),
               parse_real(path, "hz", values["hz"])};
  const Vec3 o{parse_real(path, "ox", values["ox"]), parse_real(path, "oy", values["oy"]),
               parse_real(path, "oz", values["oz"])};
  const double time = parse_real(path, "time", values["time"]);

  Grid grid;
  try {
    grid = Grid::make(static_cast<int>(dim), n, h, o);
  } catch (const ValidationError& e) {
    fail(path, "grid", e.what());
  }
  for (std::size_t a = dim; a < 3; ++a)
    if (n[a] != 1) fail(path, std::string("n") + "xyz"[a], "unused axis must have one point");

  Snapshot snap;
  snap.time = time;
  snap.field = SpinorField::zeros(grid);
  for (int c = 0; c < 2; ++c) {
    auto& dst = snap.field.comp[c];
    in.read(reinterpret_cast<char*>(dst.data()), static_cast<std::streamsize>(dst.size() * sizeof(Complex)));
    if (static_cast<std::size_t>(in.gcount()) != dst.size() * sizeof(Complex))
      fail(path, "payload", "truncated in component " + std::to_string(c + 1));
  }
  if (in.peek() != std::char_traits<char>::eof()) fail(path, "payload", "trailing bytes after component 2");
  return snap;
}

std::string dump_filename(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.bin", step);
  return buf;
}

std::vector<std::filesystem::path> list_dumps(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) throw IoError(dir.string() + ": not a directory");
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    const bool digits = name.size() == 15 && std::all_of(name.begin() + 5, name.begin() + 11, [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) != 0;
    });
    if (digits && name.rfind("snap_", 0) == 0 && name.substr(11) == ".bin") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pauli
