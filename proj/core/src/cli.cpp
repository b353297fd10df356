#include "pauli/cli.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <vector>

#include "pauli/bohm.hpp"
#include "pauli/config.hpp"
#include "pauli/currents.hpp"
#include "pauli/dump.hpp"
#include "pauli/errors.hpp"
#include "pauli/evolve.hpp"
#include "pauli/format.hpp"
#include "pauli/parallel.hpp"

namespace pauli {

namespace fs = std::filesystem;

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
}

namespace {

// ---------------------------------------------------------------- verify

struct Tally {
  std::size_t passed = 0;
  std::size_t total = 0;
  void add(const ConditionReport& r) {
    passed += r.passed_count();
    total += r.gated_count();
  }
  bool ok() const { return passed == total; }
};

DiracRep tampered(DiracRep rep, const std::string& what) {
  if (what != "B5") throw ValidationError("--tamper: only B5 is supported, got '" + what + "'");
  rep.b[4] = rep.b[3];
  return rebuild_linear_operators(rep);
}

const std::vector<ExactComplex>& sweep_values() {
  static const std::vector<ExactComplex> values = {
      ExactComplex(Rational(1, 2)),  ExactComplex(Rational(-1, 2)), ExactComplex(Rational(0), Rational(1, 2)),
      ExactComplex(Rational(0), Rational(-1, 2)), ExactComplex(1), ExactComplex(-1),
      ExactComplex(Rational(3, 7))};
  return values;
}

double symbol_square_error(const DiracRep& rep, std::size_t draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const std::array<double, 3> k{u(rng), u(rng), u(rng)};
    const double omega = u(rng);
    const ComplexMatrix4 th = theta_symbol(rep, k, omega);
    const ComplexMatrix4 sq = th * th;
    const double target = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] - 2.0 * omega;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        worst = std::max(worst, std::abs(sq(r, c) - (r == c ? target : 0.0)));
  }
  return worst;
}

// ---------------------------------------------------------------- csv

class Csv {
 public:
  Csv(const fs::path& path, const std::string& header) : path_(path), out_(path) {
    if (!out_) throw IoError(path.string() + ": cannot open for writing");
    out_ << header << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_real(values[i]);
    out_ << '\n';
  }

  std::ofstream& stream() { return out_; }

  void close() {
    out_.close();
    if (!out_) throw IoError(path_.string() + ": write failed");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError(dir.string() + ": cannot create directory");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw IoError(path.string() + ": write failed");
}

// d psi / dt = -(i/hbar) H psi
SpinorField time_derivative(const SpinorField& f, const EMPotential& p, double t, const Particle& particle) {
  SpinorField d = apply_hamiltonian(f, p, t, particle);
  d *= Complex(0.0, -1.0 / kHbar);
  return d;
}

}  // namespace

int run_verify(const VerifyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        std::vector<RepKind> kinds = {RepKind::Convenient, RepKind::Original};
        if (opts.rep) kinds = {*opts.rep};
        Tally overall;

        for (RepKind kind : kinds) {
          DiracRep rep = dirac_rep(kind, ExactComplex(Rational(-1, 2)));
          if (opts.tamper) rep = tampered(rep, *opts.tamper);
          const ConditionReport lin = check_linearization_conditions(rep);
          const ConditionReport alg = check_dirac_algebra(rep.b);
          Tally t;
          t.add(lin);
          t.add(alg);
          out << "== " << to_string(kind) << " representation" << (opts.tamper ? " (tampered)" : "") << "\n"
              << lin << alg << to_string(kind) << ": " << t.passed << '/' << t.total << " conditions pass\n\n";
          overall.passed += t.passed;
          overall.total += t.total;
        }

        if (!opts.tamper) {
          out << "== parameter sweep\n";
          for (RepKind kind : kinds)
            for (const ExactComplex& a : sweep_values())
              for (ImaginarySign sign : {ImaginarySign::Printed, ImaginarySign::Flipped}) {
                const DiracRep rep = dirac_rep(kind, a, sign);
                Tally t;
                t.add(check_linearization_conditions(rep));
                t.add(check_dirac_algebra(rep.b));
                out << "  " << to_string(kind) << " a = " << to_string(a)
                    << (sign == ImaginarySign::Printed ? " printed sign" : " flipped sign") << ": " << t.passed << '/'
                    << t.total << (t.ok() ? "" : "  FAIL") << '\n';
                overall.passed += t.passed;
                overall.total += t.total;
              }

          out << "\n== symbol square\n";
          for (RepKind kind : kinds) {
            const double e = symbol_square_error(dirac_rep(kind, ExactComplex(Rational(-1, 2))), opts.symbol_draws,
                                                 opts.seed);
            const bool ok = e < 1e-12;
            out << "  " << to_string(kind) << ": max |theta^2 - (k^2 - 2 omega) I| over " << opts.symbol_draws
                << " draws = " << format_real(e) << (ok ? "  pass" : "  FAIL") << '\n';
            overall.passed += ok ? 1 : 0;
            overall.total += 1;
          }
        }

        out << "\nsummary: " << overall.passed << '/' << overall.total << " conditions pass\n";
        if (!overall.ok()) {
          err << "verify: " << overall.total - overall.passed << " condition(s) failed\n";
          return static_cast<int>(kExitNumerical);
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

int run_simulate(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const SimConfig cfg = load_config(config);
        const Particle particle = cfg.particle();
        const EMPotential pot = cfg.make_potential();
        const SpinorField f0 = cfg.make_initial_state();
        const Grid& grid = f0.grid;
        const OutputConfig& o = cfg.output;

        ensure_directory(o.dump_dir);
        write_text(fs::path(o.dump_dir) / "run.cfg", serialize(cfg));

        Csv series(o.series, "t,norm,Sx,Sy,Sz,energy,cont_residual_max,dual_current_maxdiff");
        Csv observables(o.observables, "t,x,y,z,dx,dy,dz");

        std::vector<Observer> observers;
        observers.push_back({o.series_stride, [&](std::size_t, double t, const SpinorField& f) {
                               const Vec3 s = expect_spin(f);
                               const double e = expect_energy(f, pot, t, particle).value;
                               const double cont = continuity_residual(f, pot, t, particle).max_abs();
                               const double dual = dual_route_difference(f, pot, t, particle);
                               series.row({t, norm(f), s[0], s[1], s[2], e, cont, dual});
                               const Vec3 r = expect_position(f);
                               const Vec3 w = position_spread(f);
                               observables.row({t, r[0], r[1], r[2], w[0], w[1], w[2]});
                             }});
        observers.push_back({o.snapshot_stride, [&](std::size_t step, double t, const SpinorField& f) {
                               write_dump(fs::path(o.dump_dir) / dump_filename(step), f, t);
                             }});

        const RunRecord rec = propagate(f0, pot, cfg.propagator.propagator, 0.0, cfg.propagator.t_end, particle,
                                        observers);
        series.close();
        observables.close();

        out << "grid " << grid.dim() << "-D, " << grid.size() << " points; dt = " << format_real(cfg.propagator.propagator.dt)
            << " (explicit-stability heuristic " << format_real(suggested_dt(grid, particle)) << ")\n"
            << "steps: " << rec.steps_taken << ", t = " << format_real(rec.t_final)
            << ", final norm = " << format_real(norm(rec.final_state)) << '\n';
        if (rec.aborted) {
          err << "simulate aborted: " << rec.failure << '\n';
          return static_cast<int>(kExitNumerical);
        }
        return static_cast<int>(kExitOk);
      },
      err);
}

int run_analyze(const fs::path& dir, bool omit_spin, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto dumps = list_dumps(dir);
        if (dumps.empty()) throw IoError(dir.string() + ": no snapshot dumps");
        const SimConfig cfg = load_config(dir / "run.cfg");
        const Particle particle = cfg.particle();
        const EMPotential pot = cfg.make_potential();
        const Grid expected = cfg.make_grid();

        const fs::path target = dir / (omit_spin ? "analysis_omit_spin.csv" : "analysis.csv");
        Csv csv(target,
                "step,t,norm,j_conv_max,j_gauge_max,j_spin_max,cont_residual_max,dual_current_maxdiff,"
                "levy_leblond_residual");
        double worst_dual = 0.0, worst_cont = 0.0, worst_ll = 0.0;
        for (const auto& path : dumps) {
          const Snapshot snap = read_dump(path);
          if (!(snap.field.grid == expected)) throw IoError(path.string() + ": grid: does not match run.cfg");
          const std::string stem = path.stem().string();
          const double step = static_cast<double>(std::stoull(stem.substr(stem.find('_') + 1)));
          const SpinorField& f = snap.field;
          const double t = snap.time;

          const CurrentDecomposition dec = decompose_current(f, pot, t, particle);
          const double cont = continuity_residual(f, pot, t, particle, !omit_spin).max_abs();
          const double dual = dual_route_difference(f, pot, t, particle);
          const BispinorField bi{f, auxiliary_spinor(f, pot, t, particle)};
          const double ll =
              levy_leblond_residual(bi, pot, t, particle, time_derivative(f, pot, t, particle)).value();
          csv.row({step, t, norm(f), dec.j_conv.max_norm(), dec.j_gauge.max_norm(), dec.j_spin.max_norm(), cont, dual,
                   ll});
          worst_dual = std::max(worst_dual, dual);
          worst_cont = std::max(worst_cont, cont);
          worst_ll = std::max(worst_ll, ll);
        }
        csv.close();
        out << dumps.size() << " snapshots -> " << target.string() << "\nmax cont_residual " << format_real(worst_cont)
            << ", max dual_current_maxdiff " << format_real(worst_dual) << ", max levy_leblond_residual "
            << format_real(worst_ll) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

int run_trajectories(const fs::path& dir, const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const SimConfig cfg = load_config(config);
        if (!cfg.trajectories) throw ValidationError(config.string() + ": missing section [trajectories]");
        const TrajectoryConfig& tc = *cfg.trajectories;
        const Particle particle = cfg.particle();
        const EMPotential pot = cfg.make_potential();

        const auto dumps = list_dumps(dir);
        if (dumps.empty()) throw IoError(dir.string() + ": no snapshot dumps");
        std::vector<std::pair<double, SpinorField>> states;
        for (const auto& path : dumps) {
          Snapshot s = read_dump(path);
          if (!(s.field.grid == cfg.make_grid())) throw IoError(path.string() + ": grid: does not match config");
          states.emplace_back(s.time, std::move(s.field));
        }
        const double t0 = states.front().first;
        const double t1 = states.size() > 1 ? states.back().first : t0 + cfg.propagator.t_end;
        const ScalarField rho0 = density(states.front().second);
        const VelocityHistory history = VelocityHistory::from_states(states, pot, particle, tc.eps, tc.current);
        states.clear();

        std::vector<Vec3> seeds = tc.seeds;
        if (seeds.empty()) {
          std::mt19937_64 rng(tc.rng_seed);
          seeds = sample_seeds(rho0, tc.count, rng);
        }

        std::optional<Surface> surface;
        if (tc.arrival_axis) surface = Surface{*tc.arrival_axis, tc.arrival_position, 0};

        std::vector<Trajectory> trajs(seeds.size());
        parallel_for(seeds.size(), [&](std::size_t b, std::size_t e) {
          for (std::size_t i = b; i < e; ++i) trajs[i] = integrate_trajectory(history, seeds[i], t0, t1, tc.dt);
        });

        ensure_directory(tc.out_dir);
        const fs::path outdir(tc.out_dir);
        Csv summary(outdir / "summary.csv", "id,seed_x,seed_y,seed_z,status,samples,t_last");
        for (std::size_t i = 0; i < trajs.size(); ++i) {
          char name[32];
          std::snprintf(name, sizeof name, "traj_%05zu.csv", i);
          Csv csv(outdir / name, "t,x,y,z,vx,vy,vz");
          for (const auto& s : trajs[i].samples) csv.row({s.t, s.r[0], s.r[1], s.r[2], s.v[0], s.v[1], s.v[2]});
          csv.close();
          const auto& sd = trajs[i].seed;
          summary.stream() << i << ',' << format_real(sd[0]) << ',' << format_real(sd[1]) << ',' << format_real(sd[2])
                           << ',' << to_string(trajs[i].status) << ',' << trajs[i].samples.size() << ','
                           << format_real(trajs[i].samples.back().t) << '\n';
        }
        summary.close();

        std::size_t arrived = 0;
        if (surface) {
          Csv arrivals(outdir / "arrivals.csv", "id,seed_x,seed_y,seed_z,arrival_time");
          const auto times = arrival_times(trajs, *surface);
          for (std::size_t i = 0; i < times.size(); ++i) {
            const auto& sd = times[i].seed;
            arrivals.stream() << i << ',' << format_real(sd[0]) << ',' << format_real(sd[1]) << ','
                              << format_real(sd[2]) << ',' << (times[i].time ? format_real(*times[i].time) : "")
                              << '\n';
            arrived += times[i].time ? 1 : 0;
          }
          arrivals.close();
        }

        out << trajs.size() << " trajectories over t in [" << format_real(t0) << ", " << format_real(t1) << "] -> "
            << outdir.string() << '\n';
        if (surface) out << arrived << " crossed " << "xyz"[surface->axis] << " = " << format_real(surface->position) << '\n';
        return static_cast<int>(kExitOk);
      },
      err);
}

}  // namespace pauli
