#include "cogeom/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "cogeom/adversary.hpp"
#include "cogeom/costmodel.hpp"
#include "cogeom/datagen.hpp"
#include "cogeom/hull.hpp"
#include "cogeom/maxima.hpp"
#include "cogeom/phi.hpp"
#include "cogeom/pointio.hpp"

namespace cogeom::cli {

const char* kRunRowHeader =
    "algorithm,N,H,policy,s,h0,M,B,rng_seed,io_count,comparisons,distinct_blocks,"
    "model_distr_cost,model_bound,wall_time_ms,verified";

namespace {

struct RunOutcome {
  std::string row;
  bool verified = true;
  std::string diff;  // short summary when verification fails
};

std::vector<uint64_t> parse_u64_list(const std::string& text) {
  std::vector<uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoull(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + text);
  return out;
}

std::vector<CostParams> parse_mb_list(const std::string& text) {
  std::vector<CostParams> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw CLI::ValidationError("expected M:B pairs: " + text);
    out.emplace_back(std::stoull(item.substr(0, colon)),
                     std::stoull(item.substr(colon + 1)));
  }
  if (out.empty()) throw CLI::ValidationError("empty M:B list");
  return out;
}

bool points_equal_unordered(std::vector<Point> a, std::vector<Point> b) {
  auto lt = [](const Point& x, const Point& y) { return lex_less(x, y); };
  std::sort(a.begin(), a.end(), lt);
  std::sort(b.begin(), b.end(), lt);
  return a == b;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

/// One measured run of an algorithm over an instance under (M, B).
RunOutcome run_one(const std::string& algo, const std::vector<Point>& pts,
                   const AlgoConfig& cfg, const CostParams& params, bool verify) {
  Simulator sim(params);
  auto vec = SimVec<Point>::alloc(sim, pts.size());
  for (uint64_t i = 0; i < pts.size(); ++i) vec.set(i, pts[i]);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<Point> result;
  uint64_t h0 = 1;
  CostReport report;
  if (algo == "maxima" || algo == "maxima_rand") {
    MaximaResult r = run_maxima(sim, vec, cfg);
    result = std::move(r.maxima);
    h0 = r.h0;
    report = r.report;
  } else if (algo == "hull") {
    HullResult r = run_hull(sim, vec, cfg);
    result = std::move(r.hull);
    h0 = r.h0;
    report = r.report;
  } else {
    throw std::invalid_argument("unknown algorithm: " + algo);
  }
  double ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

  bool ok = true;
  std::string diff;
  if (verify) {
    std::vector<Point> want = (algo == "hull") ? oracle_hull(pts) : oracle_maxima(pts);
    ok = points_equal_unordered(result, want);
    if (!ok) {
      std::ostringstream d;
      size_t missing = 0, extra = 0;
      for (const Point& p : want)
        if (std::find(result.begin(), result.end(), p) == result.end()) {
          if (missing < 3) d << " missing(" << p.x << ' ' << p.y << ')';
          ++missing;
        }
      for (const Point& p : result)
        if (std::find(want.begin(), want.end(), p) == want.end()) {
          if (extra < 3) d << " extra(" << p.x << ' ' << p.y << ')';
          ++extra;
        }
      std::ostringstream head;
      head << "expected " << want.size() << " points, got " << result.size() << ";"
           << " missing " << missing << ", extra " << extra << ";" << d.str();
      diff = head.str();
    }
  }

  uint64_t n_pts = pts.size();
  uint64_t h_out = result.size();
  uint64_t words = 2 * n_pts;
  Rat model_distr = distr_cost(words, std::max<uint64_t>(2 * h0, 1), params);
  uint64_t hh = std::max<uint64_t>(h0 * std::max<uint64_t>(h_out, 1), 1);
  int alpha = alpha_inv(std::max<uint64_t>(h0, 1),
                        std::max<uint64_t>(std::min(h_out, params.m()), 1));
  Rat model_bound =
      distr_cost(words, hh, params) + scan_cost(words, params) * Rat(alpha, 1);

  std::ostringstream row;
  row << algo << ',' << n_pts << ',' << h_out << ',' << seed_policy_name(cfg.policy)
      << ',' << cfg.s << ',' << h0 << ',' << params.mem_words << ','
      << params.block_words << ',' << cfg.rng_seed << ',' << report.io_count << ','
      << report.comparisons << ',' << report.distinct_blocks << ','
      << format_double(model_distr.to_double()) << ','
      << format_double(model_bound.to_double()) << ',' << format_double(ms) << ','
      << (verify ? (ok ? "1" : "0") : "");
  return RunOutcome{row.str(), ok, diff};
}

int cmd_gen(const std::string& kind, uint64_t n, uint64_t h, uint64_t seed, bool shuffle,
            const std::string& out_path) {
  InstanceSpec spec;
  spec.n = n;
  spec.h_target = h;
  spec.kind = kind == "hull" ? InstanceKind::kHull : InstanceKind::kMaxima;
  spec.rng_seed = seed;
  spec.shuffle = shuffle;
  std::vector<Point> pts =
      spec.kind == InstanceKind::kHull ? gen_hull_instance(spec) : gen_maxima_instance(spec);
  if (out_path.empty() || out_path == "-")
    write_points(std::cout, pts, spec.header_comment());
  else
    write_points_file(out_path, pts, spec.header_comment());
  return 0;
}

int cmd_run(const std::string& algo, const std::string& in_path,
            const std::string& policy, uint64_t s, uint64_t rng_seed, uint64_t mem,
            uint64_t block, bool no_verify, bool header) {
  std::vector<Point> pts = read_points_file(in_path);
  if (pts.empty()) {
    std::cerr << "run: empty instance\n";
    return 1;
  }
  AlgoConfig cfg;
  cfg.policy = algo == "maxima_rand" ? SeedPolicy::kRandomized : parse_seed_policy(policy);
  cfg.s = s;
  cfg.rng_seed = rng_seed;
  CostParams params(mem, block);
  RunOutcome out = run_one(algo, pts, cfg, params, !no_verify);
  if (header) std::cout << kRunRowHeader << "\n";
  std::cout << out.row << "\n";
  if (!no_verify && !out.verified) {
    std::cerr << "run: output differs from the oracle: " << out.diff << "\n";
    return 2;
  }
  return 0;
}

struct SweepJob {
  std::string algo;
  InstanceSpec spec;
  AlgoConfig cfg;
  CostParams params;
};

int cmd_sweep(const std::vector<std::string>& algos, const std::string& kind,
              const std::vector<uint64_t>& n_list, const std::vector<uint64_t>& h_list,
              const std::vector<std::string>& policies, const std::vector<uint64_t>& s_list,
              const std::vector<CostParams>& mb_list, uint64_t trials, uint64_t base_seed,
              unsigned threads_opt, const std::string& out_path) {
  std::vector<SweepJob> jobs;
  uint64_t cell = 0;
  for (const std::string& algo : algos) {
    for (uint64_t n : n_list) {
      for (uint64_t h : h_list) {
        if (h > n) continue;
        if (kind == "hull" && h < 3) continue;
        for (const std::string& policy : policies) {
          for (uint64_t s : s_list) {
            for (const CostParams& params : mb_list) {
              for (uint64_t t = 0; t < trials; ++t) {
                SweepJob job;
                job.algo = algo;
                job.spec.n = n;
                job.spec.h_target = h;
                job.spec.kind =
                    kind == "hull" ? InstanceKind::kHull : InstanceKind::kMaxima;
                job.spec.rng_seed = base_seed + cell * 1000003 + t;
                job.spec.shuffle = true;
                job.cfg.policy = job.algo == "maxima_rand" ? SeedPolicy::kRandomized
                                                           : parse_seed_policy(policy);
                job.cfg.s = s;
                job.cfg.rng_seed = base_seed + t + 17;
                job.params = params;
                jobs.push_back(job);
              }
              ++cell;
            }
          }
        }
      }
    }
  }

  unsigned hw = std::thread::hardware_concurrency();
  unsigned threads = threads_opt != 0 ? threads_opt : (hw != 0 ? hw : 1);
  if (const char* env = std::getenv("CO_GEOM_THREADS")) {
    unsigned cap = static_cast<unsigned>(std::stoul(env));
    if (cap >= 1) threads = std::min(threads, cap);
  }
  threads = std::max(1u, std::min<unsigned>(threads, jobs.size()));

  std::vector<std::string> rows(jobs.size());
  std::vector<char> failed(jobs.size(), 0);
  std::atomic<size_t> next{0};
  std::mutex err_mu;
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const SweepJob& job = jobs[i];
      try {
        std::vector<Point> pts = job.spec.kind == InstanceKind::kHull
                                     ? gen_hull_instance(job.spec)
                                     : gen_maxima_instance(job.spec);
        RunOutcome out = run_one(job.algo, pts, job.cfg, job.params, true);
        rows[i] = out.row;
        failed[i] = out.verified ? 0 : 1;
      } catch (const std::exception& e) {
        std::ostringstream row;
        row << job.algo << ',' << job.spec.n << ",0,"
            << seed_policy_name(job.cfg.policy) << ',' << job.cfg.s << ",0,"
            << job.params.mem_words << ',' << job.params.block_words << ','
            << job.cfg.rng_seed << ",0,0,0,0,0,0,0";
        rows[i] = row.str();
        failed[i] = 1;
        std::lock_guard<std::mutex> lk(err_mu);
        std::cerr << "sweep cell failed: " << e.what() << "\n";
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path);
    if (!file) {
      std::cerr << "sweep: cannot open " << out_path << "\n";
      return 1;
    }
    out = &file;
  }
  *out << kRunRowHeader << "\n";
  for (const std::string& row : rows) *out << row << "\n";
  size_t bad = static_cast<size_t>(std::count(failed.begin(), failed.end(), 1));
  if (bad != 0)
    std::cerr << "sweep: " << bad << " of " << jobs.size() << " runs marked failed\n";
  return bad == 0 ? 0 : 2;
}

int cmd_adversary(uint64_t n, const std::string& dfn, uint64_t zeta,
                  const std::string& adapter, uint64_t budget, uint64_t block,
                  uint64_t h0, const std::string& out_path) {
  AdvConfig cfg;
  cfg.n = n;
  cfg.zeta = zeta;
  cfg.d_fn = GrowthFn::parse(dfn);
  cfg.comparison_budget = budget;
  cfg.block_words = block;

  AdapterFn fn;
  if (adapter == "maxima")
    fn = [h0](Adversary& adv) { return maxima_adapter(adv, h0); };
  else if (adapter == "sortscan")
    fn = [](Adversary& adv) { return sortscan_adapter(adv); };
  else
    throw std::invalid_argument("unknown adapter: " + adapter);

  AdvRunReport rep = run_against(cfg, fn);

  std::cout << "comparisons=" << rep.comparisons << " charge=" << rep.total_charge
            << " forced_io_lb=" << format_double(rep.forced_io_lower_bound)
            << " epochs=" << rep.epochs.size() << " top_nodes=" << rep.top_nodes
            << " terminated=" << rep.terminated
            << " all_terminated=" << (rep.all_terminated ? 1 : 0)
            << " budget_exceeded=" << (rep.budget_exceeded ? 1 : 0)
            << " answer_correct=" << (rep.answer_correct ? 1 : 0) << "\n";
  for (const EpochRecord& e : rep.epochs)
    std::cout << "epoch " << e.resolved.to_string() << " h " << e.h_before << " -> "
              << e.h_after << " (d=" << e.growth << ")\n";

  if (!out_path.empty()) {
    // transcript comes from a fresh deterministic rerun of the same setup
    Adversary adv(cfg);
    try {
      fn(adv);
    } catch (const AdvBudgetExceeded&) {
    }
    std::ofstream file(out_path);
    if (!file) {
      std::cerr << "adversary: cannot open " << out_path << "\n";
      return 1;
    }
    file << "step,kind,payload\n";
    for (const AdvEvent& ev : adv.transcript())
      file << ev.step << ',' << ev.kind_name() << ',' << ev.payload() << "\n";
  }
  if (!rep.budget_exceeded && !rep.answer_correct) return 2;
  return 0;
}

int cmd_phi(uint64_t s, const std::string& growth, uint64_t h_max, uint64_t kappa_max,
            uint64_t t_max) {
  GrowthFn a = growth == "paper" ? GrowthFn::ack_level(static_cast<int>(s) + 1)
                                 : GrowthFn::parse(growth);
  std::cout << "h,t,kappa,phi,game,match\n";
  for (uint64_t h = 1; h <= h_max; ++h) {
    for (uint64_t kappa = 1; kappa <= kappa_max; ++kappa) {
      for (uint64_t t = 0; t <= t_max; ++t) {
        StatusVector v(h, {{t, kappa}});
        SatInt p = phi(v, a);
        std::string game = "guard", match = "-";
        try {
          SatInt g = game_max_bruteforce(v, a, 200000);
          game = g.to_string();
          match = (g == p) ? "1" : "0";
        } catch (const std::runtime_error&) {
        }
        std::cout << h << ',' << t << ',' << kappa << ',' << p.to_string() << ','
                  << game << ',' << match << "\n";
      }
    }
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"output-sensitive planar maxima and convex hull over an instrumented "
               "external-memory simulator"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");

  auto* gen = app.add_subcommand("gen", "generate an oracle-verified instance");
  gen->set_help_flag("--help", "print help");
  std::string gen_kind = "maxima", gen_out;
  uint64_t gen_n = 0, gen_h = 0, gen_seed = 1;
  bool gen_noshuffle = false;
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"maxima", "hull"}));
  gen->add_option("--n", gen_n)->required();
  gen->add_option("--h", gen_h)->required();
  gen->add_option("--seed", gen_seed);
  gen->add_flag("--no-shuffle", gen_noshuffle);
  gen->add_option("-o,--out", gen_out);

  auto* runc = app.add_subcommand("run", "run one algorithm over an instance file");
  runc->set_help_flag("--help", "print help");
  std::string run_algo = "maxima", run_in, run_policy = "const";
  uint64_t run_s = 2, run_rng = 0, run_mem = 1 << 16, run_block = 1 << 8;
  bool run_noverify = false, run_header = false;
  runc->add_option("--algo", run_algo)
      ->check(CLI::IsMember({"maxima", "maxima_rand", "hull"}));
  runc->add_option("--in", run_in)->required();
  runc->add_option("--policy", run_policy)
      ->check(CLI::IsMember({"const", "lambda_n", "lambda_m", "rand"}));
  runc->add_option("--s", run_s);
  runc->add_option("--rng-seed", run_rng);
  runc->add_option("--mem", run_mem);
  runc->add_option("--block", run_block);
  runc->add_flag("--no-verify", run_noverify);
  runc->add_flag("--csv-header", run_header);

  auto* sweep = app.add_subcommand("sweep", "parameter grid of measured runs, CSV out");
  sweep->set_help_flag("--help", "print help");
  std::string sw_algos = "maxima", sw_kind = "maxima", sw_policies = "const",
              sw_mb = "65536:256", sw_out;
  std::string sw_n, sw_h, sw_s = "2";
  uint64_t sw_trials = 1, sw_seed = 1;
  unsigned sw_threads = 0;
  sweep->add_option("--algos", sw_algos, "comma list: maxima,maxima_rand,hull");
  sweep->add_option("--kind", sw_kind)->check(CLI::IsMember({"maxima", "hull"}));
  sweep->add_option("--n-list", sw_n)->required();
  sweep->add_option("--h-list", sw_h)->required();
  sweep->add_option("--policies", sw_policies);
  sweep->add_option("--s-list", sw_s);
  sweep->add_option("--mb-list", sw_mb, "comma list of M:B pairs");
  sweep->add_option("--trials", sw_trials);
  sweep->add_option("--base-seed", sw_seed);
  sweep->add_option("--threads", sw_threads);
  sweep->add_option("-o,--out", sw_out);

  auto* advc = app.add_subcommand("adversary", "drive an adapter against the adversary");
  advc->set_help_flag("--help", "print help");
  uint64_t adv_n = 256, adv_zeta = 2, adv_budget = 0, adv_block = 64, adv_h0 = 2;
  std::string adv_dfn = "inc", adv_adapter = "maxima", adv_out;
  advc->add_option("--n", adv_n);
  advc->add_option("--dfn", adv_dfn, "inc, inc2, dbl, or ack:<level>");
  advc->add_option("--zeta", adv_zeta);
  advc->add_option("--adapter", adv_adapter)
      ->check(CLI::IsMember({"maxima", "sortscan"}));
  advc->add_option("--budget", adv_budget);
  advc->add_option("--block", adv_block);
  advc->add_option("--h0", adv_h0);
  advc->add_option("-o,--out", adv_out);

  auto* phic = app.add_subcommand("phi", "potential table with the exhaustive game");
  phic->set_help_flag("--help", "print help");
  uint64_t phi_s = 1, phi_h = 3, phi_k = 2, phi_t = 2;
  std::string phi_growth = "paper";
  phic->add_option("--s", phi_s);
  phic->add_option("--growth", phi_growth, "paper, inc, inc2, dbl, ack:<level>");
  phic->add_option("--h-max", phi_h);
  phic->add_option("--kappa-max", phi_k);
  phic->add_option("--t-max", phi_t);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*gen) return cmd_gen(gen_kind, gen_n, gen_h, gen_seed, !gen_noshuffle, gen_out);
    if (*runc)
      return cmd_run(run_algo, run_in, run_policy, run_s, run_rng, run_mem, run_block,
                     run_noverify, run_header);
    if (*sweep) {
      std::vector<std::string> algos, policies;
      {
        std::stringstream ss(sw_algos);
        std::string item;
        while (std::getline(ss, item, ',')) algos.push_back(item);
      }
      {
        std::stringstream ss(sw_policies);
        std::string item;
        while (std::getline(ss, item, ',')) policies.push_back(item);
      }
      return cmd_sweep(algos, sw_kind, parse_u64_list(sw_n), parse_u64_list(sw_h),
                       policies, parse_u64_list(sw_s), parse_mb_list(sw_mb), sw_trials,
                       sw_seed, sw_threads, sw_out);
    }
    if (*advc)
      return cmd_adversary(adv_n, adv_dfn, adv_zeta, adv_adapter, adv_budget, adv_block,
                           adv_h0, adv_out);
    if (*phic) return cmd_phi(phi_s, phi_growth, phi_h, phi_k, phi_t);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    std::cerr << "internal assertion: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace cogeom::cli
