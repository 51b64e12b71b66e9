#include "wgn/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <stdexcept>

#include "wgn/operators.hpp"

namespace wgn {

// The checkpoint layout stores raw doubles; this code assumes the host is
// little-endian IEEE-754 and refuses to compile elsewhere.
static_assert(std::endian::native == std::endian::little,
              "checkpoint format requires a little-endian host");
static_assert(sizeof(double) == 8 && sizeof(std::uint64_t) == 8);

namespace {

constexpr char checkpoint_magic[4] = {'W', 'G', 'N', '1'};
constexpr std::uint32_t checkpoint_version = 1;

void print_double(std::FILE* out, double x, char suffix) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g%c", x, suffix);
  std::fputs(buf, out);
}

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

void write_raw(std::FILE* f, const void* p, std::size_t bytes) {
  if (std::fwrite(p, 1, bytes, f) != bytes)
    throw std::runtime_error("checkpoint: short write");
}

void read_raw(std::FILE* f, void* p, std::size_t bytes) {
  if (std::fread(p, 1, bytes, f) != bytes)
    throw std::runtime_error("checkpoint: truncated file");
}

} // namespace

void write_diagnostics_header(std::FILE* out) {
  std::fputs("t,mass,e0,es,min_h,y_norm,cg_iterations\n", out);
}

void write_diagnostics_row(std::FILE* out, const DiagnosticsRecord& rec) {
  print_double(out, rec.t, ',');
  print_double(out, rec.mass, ',');
  print_double(out, rec.e0, ',');
  print_double(out, rec.es, ',');
  print_double(out, rec.min_h, ',');
  print_double(out, rec.y_norm, ',');
  std::fprintf(out, "%d\n", rec.cg_iterations);
}

void write_snapshot_csv(const std::string& path, const Grid& grid,
                        const State& state, const Bathymetry& bath,
                        const PhysParams& params) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw std::runtime_error("snapshot: cannot open " + path);
  std::fputs("x,zeta,v,h,b\n", f.get());
  for (int i = 0; i < grid.n_points; ++i) {
    const double h = 1.0 + params.epsilon * state.zeta[i] - params.beta * bath.b[i];
    print_double(f.get(), grid.dx * i, ',');
    print_double(f.get(), state.zeta[i], ',');
    print_double(f.get(), state.v[i], ',');
    print_double(f.get(), h, ',');
    print_double(f.get(), bath.b[i], '\n');
  }
}

std::string snapshot_filename(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6f.csv", t);
  return buf;
}

void write_checkpoint(const std::string& path, const Grid& grid,
                      const PhysParams& params, const State& state,
                      const RealField& bottom) {
  const std::string tmp = path + ".tmp";
  {
    FilePtr f(std::fopen(tmp.c_str(), "wb"));
    if (!f) throw std::runtime_error("checkpoint: cannot open " + tmp);

    write_raw(f.get(), checkpoint_magic, 4);
    write_raw(f.get(), &checkpoint_version, 4);
    const std::uint64_t n = static_cast<std::uint64_t>(grid.n_points);
    write_raw(f.get(), &n, 8);
    const double header[6] = {grid.length, params.mu, params.epsilon,
                              params.beta,  params.h0, state.t};
    write_raw(f.get(), header, sizeof header);
    write_raw(f.get(), state.zeta.data(), 8 * grid.n_points);
    write_raw(f.get(), state.v.data(), 8 * grid.n_points);
    write_raw(f.get(), bottom.data(), 8 * grid.n_points);
    if (std::fflush(f.get()) != 0) throw std::runtime_error("checkpoint: flush failed");
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint read_checkpoint(const std::string& path) {
  FilePtr f(std::fopen(path.c_str(), "rb"));
  if (!f) throw std::runtime_error("checkpoint: cannot open " + path);

  char magic[4];
  read_raw(f.get(), magic, 4);
  if (std::memcmp(magic, checkpoint_magic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  std::uint32_t version = 0;
  read_raw(f.get(), &version, 4);
  if (version != checkpoint_version)
    throw std::runtime_error("checkpoint: unsupported version in " + path);

  std::uint64_t n = 0;
  read_raw(f.get(), &n, 8);
  if (n < 8 || n > (1ull << 26) || n % 2 != 0)
    throw std::runtime_error("checkpoint: implausible grid size in " + path);

  double header[6];
  read_raw(f.get(), header, sizeof header);

  Checkpoint cp;
  cp.grid = make_grid(static_cast<int>(n), header[0]);
  cp.params = PhysParams{header[1], header[2], header[3], header[4]};
  cp.state.t = header[5];
  cp.state.zeta.resize(n);
  cp.state.v.resize(n);
  cp.bottom.resize(n);
  read_raw(f.get(), cp.state.zeta.data(), 8 * n);
  read_raw(f.get(), cp.state.v.data(), 8 * n);
  read_raw(f.get(), cp.bottom.data(), 8 * n);

  char extra;
  if (std::fread(&extra, 1, 1, f.get()) != 0)
    throw std::runtime_error("checkpoint: trailing bytes in " + path);
  return cp;
}

} // namespace wgn
