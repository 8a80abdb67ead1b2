// Command-line front end: choreography validation, simulation runs with a
// printed runtime report, counter-sequence listing, trace rendering to SVG,
// and a demonstration of the shift-assignment machinery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dancing/chorfile.hpp"
#include "dancing/counter.hpp"
#include "dancing/dancer.hpp"
#include "dancing/dyck.hpp"
#include "dancing/geometry.hpp"
#include "dancing/palette.hpp"
#include "dancing/simulator.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // validation or correctness failure
constexpr int kExitUsage = 2;    // usage or I/O error

// ---------------------------------------------------------------------------
// Seed handling: the single user-facing --seed is split into independent
// sub-seeds for the initial scatter, the scheduler, the adversary, and the
// observation frames, so one number reproduces the whole run.

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sub_seed(std::uint64_t master, std::uint64_t salt) {
  return splitmix64(master ^ splitmix64(salt));
}

constexpr std::uint64_t kScatterSalt = 0;
constexpr std::uint64_t kSchedulerSalt = 1;
constexpr std::uint64_t kAdversarySalt = 2;
constexpr std::uint64_t kFrameSalt = 3;

// Seeded all-off start: n distinct robots scattered over the unit disk.
dancing::Configuration scatter_initial(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  dancing::Configuration c;
  c.robots.reserve(static_cast<std::size_t>(n));
  while (c.robots.size() < static_cast<std::size_t>(n)) {
    double r = std::sqrt(uniform());
    double a = uniform() * 2.0 * M_PI;
    dancing::Point p{r * std::cos(a), r * std::sin(a)};
    bool duplicate = false;
    for (const auto& existing : c.robots) {
      if (existing.position == p) duplicate = true;
    }
    if (!duplicate) c.robots.push_back({p, 1});
  }
  return c;
}

// ---------------------------------------------------------------------------
// Shared formatting helpers.

std::string fmt_double(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string fmt_point(const dancing::Point& p) {
  return "(" + fmt_double(p.x) + ", " + fmt_double(p.y) + ")";
}

const char* phase_label(dancing::PhaseId p) {
  switch (p) {
    case dancing::PhaseId::phase0: return "phase0";
    case dancing::PhaseId::phase1: return "phase1";
    case dancing::PhaseId::phase2: return "phase2";
    case dancing::PhaseId::phase3: return "phase3";
    case dancing::PhaseId::done: return "done";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& path) {
  dancing::ChoreographyFile file;
  try {
    file = dancing::load_choreography(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cout << "document: n=" << file.n << " k=" << file.k
            << " patterns=" << file.choreography.length()
            << (file.choreography.periodic ? " periodic" : " finite") << "\n";
  try {
    std::cout << "longest feasible choreography: "
              << dancing::q_max(file.n, file.k) << "\n";
  } catch (const std::exception&) {
    // n or k below the minimum; the violation list below explains it.
  }
  auto report = dancing::validate(file.choreography, file.n, file.k);
  if (report.ok()) {
    std::cout << "feasible\n";
    return kExitOk;
  }
  for (const auto& v : report.violations) {
    std::cout << "violation: " << v << "\n";
  }
  return kExitFailure;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  std::string file;
  int n = 0;  // 0: take the document's value
  std::string scheduler = "round_robin";
  std::string script;
  std::string adversary = "rigid";
  double fraction = 1.0;
  double delta = 0.1;
  std::uint64_t seed = 12345;
  int periods = 3;
  std::int64_t max_rounds = 1'000'000;
  std::string trace_out;
};

// Per-phase epoch bounds from the runtime analysis. Travel bounds scale with
// the supporting radius R and the adversary's guaranteed progress delta;
// settling bounds are constant.
struct EpochBound {
  std::string name;   // which runtime guarantee the comparison instantiates
  double value = 0;   // numeric bound; travel bounds use R/delta
  bool travel = false;  // true when the bound involves R/delta
};

EpochBound bound_for(dancing::PhaseId phase, bool reset,
                     dancing::PatternTag target, double r, double delta) {
  auto travel = [&](double factor, const std::string& name) {
    EpochBound b;
    b.name = name;
    b.travel = true;
    b.value = delta > 0 ? factor * r / delta
                        : std::numeric_limits<double>::infinity();
    return b;
  };
  switch (phase) {
    case dancing::PhaseId::phase0:
      return {"election-settling bound (3 epochs)", 3.0, false};
    case dancing::PhaseId::phase1:
      if (target == dancing::PatternTag::point) {
        return travel(3.0, "leader-placement bound (3R/delta epochs)");
      }
      return travel(2.0, "leader-placement bound (2R/delta epochs)");
    case dancing::PhaseId::phase2:
      switch (target) {
        case dancing::PatternTag::point:
          return travel(1.0, "gather bound (R/delta epochs)");
        case dancing::PatternTag::two_points:
        case dancing::PatternTag::three_points:
          return travel(2.0, "few-vertex fill bound (2R/delta epochs)");
        case dancing::PatternTag::n_points:
          return travel(5.0, "many-vertex fill bound (5R/delta epochs)");
      }
      break;
    case dancing::PhaseId::phase3:
    case dancing::PhaseId::done:
      break;
  }
  if (reset) return {"counter-rewind bound (3 epochs)", 3.0, false};
  return {"counter-update bound (3 epochs)", 3.0, false};
}

int cmd_run(const RunOptions& opt) {
  dancing::ChoreographyFile file;
  try {
    file = dancing::load_choreography(opt.file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (opt.n != 0 && opt.n != file.n) {
    std::cerr << "error: document is written for n = " << file.n
              << " robots, but --n " << opt.n << " was requested\n";
    return kExitFailure;
  }
  auto report = dancing::validate(file.choreography, file.n, file.k);
  if (!report.ok()) {
    for (const auto& v : report.violations) {
      std::cerr << "violation: " << v << "\n";
    }
    return kExitFailure;
  }

  dancing::SchedulerPolicy sched;
  if (opt.scheduler == "round_robin") {
    sched.kind = dancing::SchedulerPolicy::Kind::round_robin;
  } else if (opt.scheduler == "random_fair") {
    sched.kind = dancing::SchedulerPolicy::Kind::random_fair;
    sched.seed = sub_seed(opt.seed, kSchedulerSalt);
  } else if (opt.scheduler == "scripted") {
    sched.kind = dancing::SchedulerPolicy::Kind::scripted;
    std::stringstream ss(opt.script);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        sched.script.push_back(std::stoul(item));
      } catch (const std::exception&) {
        std::cerr << "error: --script expects a comma-separated list of "
                     "robot indices\n";
        return kExitUsage;
      }
    }
    if (sched.script.empty()) {
      std::cerr << "error: --scheduler scripted requires --script\n";
      return kExitUsage;
    }
  } else {
    std::cerr << "error: unknown scheduler '" << opt.scheduler << "'\n";
    return kExitUsage;
  }

  dancing::MovementAdversary adv;
  adv.delta = opt.delta;
  if (opt.adversary == "rigid") {
    adv.kind = dancing::MovementAdversary::Kind::rigid;
  } else if (opt.adversary == "fixed_fraction") {
    adv.kind = dancing::MovementAdversary::Kind::fixed_fraction;
    adv.fraction = opt.fraction;
  } else if (opt.adversary == "random") {
    adv.kind = dancing::MovementAdversary::Kind::random;
    adv.seed = sub_seed(opt.seed, kAdversarySalt);
  } else if (opt.adversary == "worst_stop") {
    adv.kind = dancing::MovementAdversary::Kind::worst_stop;
  } else {
    std::cerr << "error: unknown adversary '" << opt.adversary << "'\n";
    return kExitUsage;
  }

  dancing::RunLimits limits;
  limits.max_rounds = opt.max_rounds;
  limits.max_periods = opt.periods;

  dancing::Configuration initial =
      scatter_initial(file.n, sub_seed(opt.seed, kScatterSalt));

  dancing::Trace trace;
  try {
    trace = dancing::run(file, initial, sched, adv,
                         sub_seed(opt.seed, kFrameSalt), limits);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::cout << "run: n=" << trace.n << " k=" << trace.k << " patterns="
            << trace.pattern_count
            << (trace.periodic ? " periodic" : " finite") << " seed="
            << opt.seed << "\n";
  std::cout << "scheduler: " << trace.scheduler << "  adversary: "
            << trace.adversary;
  if (trace.adversary == "fixed_fraction") {
    std::cout << " fraction=" << fmt_double(trace.fraction);
  }
  std::cout << " delta=" << fmt_double(trace.delta) << "\n";

  std::cout << "formations:\n";
  for (const auto& f : trace.formations) {
    std::cout << "  pattern " << f.index << " formed at round " << f.round
              << "\n";
  }
  if (trace.formations.empty()) std::cout << "  (none)\n";

  dancing::EpochStats stats = dancing::epoch_stats(trace);

  // Concentricity audit: every supporting circle of the run shares one
  // center, and the non-degenerate ones share one radius.
  bool bounds_ok = true;
  if (!stats.circles.empty()) {
    std::cout << "supporting circles:\n";
    double max_radius = 0.0;
    for (const auto& c : stats.circles) {
      std::cout << "  pattern " << c.index << ": center " << fmt_point(c.center)
                << " radius " << fmt_double(c.radius)
                << (c.is_point ? " (degenerate)" : "") << "\n";
      max_radius = std::max(max_radius, c.radius);
    }
    double spread = 0.0;
    double radius_dev = 0.0;
    for (const auto& c : stats.circles) {
      spread = std::max(spread,
                        dancing::dist(c.center, stats.circles.front().center));
      if (!c.is_point) {
        radius_dev = std::max(radius_dev, std::abs(c.radius - max_radius));
      }
    }
    double limit = 1e-6 * std::max(max_radius, 1e-12);
    bool con_ok = spread <= limit && radius_dev <= limit;
    std::cout << "  concentricity: max center spread " << fmt_double(spread, 3)
              << ", max radius deviation " << fmt_double(radius_dev, 3)
              << " (limit " << fmt_double(limit, 3) << ") -- "
              << (con_ok ? "ok" : "VIOLATED") << "\n";
    if (!con_ok) bounds_ok = false;
  }

  // Epoch accounting against the per-phase runtime guarantees, instantiated
  // with this run's supporting radius and delta.
  double r_run = 0.0;
  for (const auto& c : stats.circles) r_run = std::max(r_run, c.radius);
  if (r_run == 0.0 && !trace.initial.empty()) {
    std::vector<dancing::Point> pts;
    for (const auto& s : trace.initial) pts.push_back(s.position);
    r_run = dancing::sec(pts).radius;
  }
  bool rigid = trace.adversary == "rigid";
  std::cout << "epoch accounting (R = " << fmt_double(r_run)
            << ", delta = " << fmt_double(trace.delta) << "):\n";
  std::size_t q = trace.pattern_count;
  for (const auto& seg : stats.segments) {
    std::size_t idx = q == 0 ? 0
                             : static_cast<std::size_t>(
                                   seg.counter < 0 ? 0 : seg.counter) % q;
    dancing::PatternTag target =
        dancing::classify(file.choreography.patterns[idx]).tag;
    std::cout << "  pattern " << idx << " " << phase_label(seg.phase)
              << (seg.reset ? " (rewind)" : "") << ": " << seg.epochs
              << " epoch" << (seg.epochs == 1 ? "" : "s");
    if (seg.phase == dancing::PhaseId::done) {
      std::cout << " -- termination hold (movement forbidden, no bound)\n";
      continue;
    }
    EpochBound bound =
        bound_for(seg.phase, seg.reset, target, r_run, trace.delta);
    if (bound.travel && rigid) {
      std::cout << " -- " << bound.name
                << " holds trivially (rigid moves always complete)\n";
      continue;
    }
    bool ok = static_cast<double>(seg.epochs) <= bound.value;
    std::cout << " <= " << fmt_double(bound.value, 4) << " -- " << bound.name
              << " -- " << (ok ? "ok" : "EXCEEDED") << "\n";
    if (!ok) bounds_ok = false;
  }

  const char* status = trace.status == dancing::RunStatus::done
                           ? "done"
                           : trace.status == dancing::RunStatus::periods_complete
                                 ? "periods_complete"
                                 : "timeout";
  std::cout << "status: " << status << " after " << trace.rounds
            << " rounds\n";

  if (!opt.trace_out.empty()) {
    try {
      dancing::write_trace(trace, opt.trace_out);
      std::cout << "trace written to " << opt.trace_out << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }

  if (trace.status == dancing::RunStatus::timeout) {
    std::cerr << "round limit reached before the choreography completed "
                 "(no invariant was violated)\n";
    return kExitFailure;
  }
  return bounds_ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// graycode

int cmd_graycode(int m, int kprime) {
  dancing::GrayList list = dancing::gray_list(m, kprime);
  for (const auto& entry : list.entries()) {
    std::cout << "(";
    for (std::size_t j = 0; j < entry.size(); ++j) {
      if (j) std::cout << ",";
      std::cout << entry[j];
    }
    std::cout << ")\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// dyck-demo

int cmd_dyck_demo(const std::string& bits) {
  for (char c : bits) {
    if (c != '0' && c != '1') {
      std::cerr << "error: the string must use only characters 0 and 1\n";
      return kExitUsage;
    }
  }
  std::cout << "string: " << bits << "\n";
  if (!dancing::is_balanced(bits)) {
    std::cout << "balanced: no\n";
    std::cerr << "error: unbalanced string (equal counts of 0 and 1 "
                 "required)\n";
    return kExitFailure;
  }
  std::cout << "balanced: yes\n";
  auto factors = dancing::factorize(bits);
  std::cout << "factors:";
  for (const auto& f : factors) std::cout << " " << f;
  std::cout << "\n";
  std::cout << "assignment (1 = robot, 0 = projection):\n";
  for (std::size_t i = 1; i <= bits.size(); ++i) {
    if (bits[i - 1] != '1') continue;
    std::size_t t = dancing::target_for(bits, i);
    std::cout << "  robot at position " << i << " -> projection at position "
              << t << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// render

struct RenderOptions {
  std::string trace;
  std::string out_dir = "frames";
  std::int64_t every = 1;
};

struct Box {
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1;
};

std::string css_color(int color, int k) {
  if (color == k - 2) return "#e45756";  // first leader
  if (color == k - 1) return "#54a24b";  // second leader
  if (color == k) return "#f58518";      // third leader
  if (color == 1) return "#bbbbbb";      // off
  // Counter colors 2..k-3: a blue ramp, light to dark.
  int span = std::max(1, k - 5);  // count of ramp steps between 2 and k-3
  double t = static_cast<double>(color - 2) / static_cast<double>(span);
  auto lerp = [t](int a, int b) {
    return static_cast<int>(std::lround(a + t * (b - a)));
  };
  int r = lerp(0x9e, 0x08), g = lerp(0xca, 0x30), b = lerp(0xe1, 0x6b);
  std::ostringstream os;
  os << "#" << std::hex << std::setfill('0') << std::setw(2) << r
     << std::setw(2) << g << std::setw(2) << b;
  return os.str();
}

int cmd_render(const RenderOptions& opt) {
  dancing::Trace trace;
  try {
    trace = dancing::read_trace_file(opt.trace);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (opt.every <= 0) {
    std::cerr << "error: --every must be positive\n";
    return kExitUsage;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << opt.out_dir
              << ": " << ec.message() << "\n";
    return kExitUsage;
  }

  dancing::Palette pal = dancing::Palette::with_total(trace.k);

  // Pass one: replay every round to fix one bounding box for all frames, so
  // the animation does not jitter.
  std::vector<dancing::RobotState> state = trace.initial;
  Box box;
  bool box_set = false;
  auto grow = [&box, &box_set](const dancing::Point& p, double pad) {
    if (!box_set) {
      box = {p.x - pad, p.y - pad, p.x + pad, p.y + pad};
      box_set = true;
      return;
    }
    box.min_x = std::min(box.min_x, p.x - pad);
    box.min_y = std::min(box.min_y, p.y - pad);
    box.max_x = std::max(box.max_x, p.x + pad);
    box.max_y = std::max(box.max_y, p.y + pad);
  };
  for (const auto& s : state) grow(s.position, 0.0);
  for (const auto& e : trace.events) {
    grow(e.to, 0.0);
    grow(e.from, 0.0);
  }
  if (!box_set) box = {-1, -1, 1, 1};
  // Leave room for the supporting circle overlay (radius up to the largest
  // pairwise extent) and a visual margin.
  double w = box.max_x - box.min_x, h = box.max_y - box.min_y;
  double margin = 0.15 * std::max({w, h, 1e-6});
  box.min_x -= margin;
  box.min_y -= margin;
  box.max_x += margin;
  box.max_y += margin;
  w = box.max_x - box.min_x;
  h = box.max_y - box.min_y;

  // Pass two: emit one SVG per sampled round, applying events in order.
  state = trace.initial;
  std::size_t next_event = 0;
  std::int64_t files = 0;
  double robot_r = 0.012 * std::max(w, h);
  for (std::int64_t round = 0; round < trace.rounds; ++round) {
    dancing::PhaseId phase = dancing::PhaseId::phase0;
    while (next_event < trace.events.size() &&
           trace.events[next_event].round <= round) {
      const auto& e = trace.events[next_event];
      state[e.robot].position = e.to;
      state[e.robot].color = e.new_color;
      phase = e.phase;
      ++next_event;
    }
    if (round % opt.every != 0) continue;

    std::optional<dancing::Point> l1, l2, l3;
    for (const auto& s : state) {
      if (s.color == pal.lambda1()) l1 = s.position;
      if (s.color == pal.lambda2()) l2 = s.position;
      if (s.color == pal.lambda3()) l3 = s.position;
    }

    auto py = [&box](double y) { return box.min_y + box.max_y - y; };
    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"800\" height=\"" << std::lround(800.0 * h / w)
        << "\" viewBox=\"" << box.min_x << " " << box.min_y << " " << w << " "
        << h << "\">\n";
    svg << "  <title>round " << round << "</title>\n";
    svg << "  <rect x=\"" << box.min_x << "\" y=\"" << box.min_y
        << "\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"white\"/>\n";

    if (l1 && l2 && dancing::dist(*l1, *l2) > 1e-12) {
      double radius = dancing::dist(*l1, *l2);
      svg << "  <circle class=\"supporting-circle\" cx=\"" << l1->x
          << "\" cy=\"" << py(l1->y) << "\" r=\"" << radius
          << "\" fill=\"none\" stroke=\"#888888\" stroke-dasharray=\"0.02\" "
             "stroke-width=\""
          << 0.003 * std::max(w, h) << "\"/>\n";
      if (phase == dancing::PhaseId::phase2) {
        // The diameter through the second leader: the formation's shift and
        // rise moves happen along and off this line.
        dancing::Point far{l1->x + (l1->x - l2->x), l1->y + (l1->y - l2->y)};
        svg << "  <line class=\"main-diameter\" x1=\"" << l2->x << "\" y1=\""
            << py(l2->y) << "\" x2=\"" << far.x << "\" y2=\"" << py(far.y)
            << "\" stroke=\"#333333\" stroke-width=\""
            << 0.004 * std::max(w, h) << "\"/>\n";
      }
    }
    if (l1 && l2 && l3) {
      svg << "  <path class=\"chiral-angle\" d=\"M " << l2->x << " "
          << py(l2->y) << " L " << l1->x << " " << py(l1->y) << " L " << l3->x
          << " " << py(l3->y) << "\" fill=\"none\" stroke=\"#aa77cc\" "
          << "stroke-width=\"" << 0.003 * std::max(w, h) << "\"/>\n";
    }
    for (const auto& s : state) {
      svg << "  <circle class=\"robot\" cx=\"" << s.position.x << "\" cy=\""
          << py(s.position.y) << "\" r=\"" << robot_r << "\" fill=\""
          << css_color(s.color, trace.k) << "\" stroke=\"#222222\" "
          << "stroke-width=\"" << 0.25 * robot_r << "\"/>\n";
    }
    svg << "</svg>\n";

    std::ostringstream name;
    name << "frame_" << std::setfill('0') << std::setw(6) << round << ".svg";
    fs::path out = fs::path(opt.out_dir) / name.str();
    std::ofstream f(out);
    if (!f) {
      std::cerr << "error: cannot write " << out.string() << "\n";
      return kExitUsage;
    }
    f << svg.str();
    ++files;
  }
  std::cout << "wrote " << files << " frame" << (files == 1 ? "" : "s")
            << " to " << opt.out_dir << "\n";
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"Luminous-swarm choreography toolkit"};
  app.require_subcommand(1);

  std::string validate_file;
  auto* validate =
      app.add_subcommand("validate", "Check a choreography document");
  validate->add_option("file", validate_file, "choreography document (JSON)")
      ->required();

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Simulate a choreography");
  run->add_option("file", run_opt.file, "choreography document (JSON)")
      ->required();
  run->add_option("--n", run_opt.n, "swarm size (must match the document)");
  run->add_option("--scheduler", run_opt.scheduler,
                  "round_robin | random_fair | scripted")
      ->default_str("round_robin");
  run->add_option("--script", run_opt.script,
                  "comma-separated robot indices for --scheduler scripted");
  run->add_option("--adversary", run_opt.adversary,
                  "rigid | fixed_fraction | random | worst_stop")
      ->default_str("rigid");
  run->add_option("--fraction", run_opt.fraction,
                  "stop fraction for fixed_fraction, in (0, 1]");
  run->add_option("--delta", run_opt.delta,
                  "guaranteed minimum travel distance");
  run->add_option("--seed", run_opt.seed,
                  "master seed; scatter, scheduler, adversary and frame "
                  "seeds are derived from it");
  run->add_option("--periods", run_opt.periods,
                  "periodic choreographies stop after this many cycles");
  run->add_option("--max-rounds", run_opt.max_rounds, "round budget");
  run->add_option("--trace-out", run_opt.trace_out,
                  "write the trace to this path");

  int gray_m = 0, gray_k = 0;
  auto* graycode =
      app.add_subcommand("graycode", "List the counter state sequence");
  graycode->add_option("--m", gray_m, "population")->required();
  graycode->add_option("--k", gray_k, "number of counter colors")->required();

  RenderOptions render_opt;
  auto* render = app.add_subcommand("render", "Render a trace to SVG frames");
  render->add_option("trace", render_opt.trace, "trace file")->required();
  render->add_option("--out-dir", render_opt.out_dir, "output directory");
  render->add_option("--every", render_opt.every,
                     "sample one frame every this many rounds");

  std::string dyck_bits;
  auto* dyck = app.add_subcommand(
      "dyck-demo", "Factorize a balanced string and print its assignment");
  dyck->add_option("string", dyck_bits, "string over {0,1}")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_file);
    if (run->parsed()) return cmd_run(run_opt);
    if (graycode->parsed()) return cmd_graycode(gray_m, gray_k);
    if (render->parsed()) return cmd_render(render_opt);
    if (dyck->parsed()) return cmd_dyck_demo(dyck_bits);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
