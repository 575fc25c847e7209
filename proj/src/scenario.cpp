#include <hybrid_games/scenario.h>

#include <toml.hpp>

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace hybrid_games {

namespace {

int LineOf(const toml::node& node) {
  return static_cast<int>(node.source().begin.line);
}

// Typed access to one TOML table. Rejects keys outside |allowed| on
// construction; every error names the table path and key.
class TableReader {
 public:
  TableReader(const toml::table& table, std::string path,
              const std::set<std::string>& allowed)
      : table_(table), path_(std::move(path)) {
    for (auto&& [key, node] : table_)
      if (!allowed.count(std::string(key.str())))
        throw ScenarioError("unknown key '" + std::string(key.str()) + "'",
                            Field(std::string(key.str())), LineOf(node));
  }

  std::string Field(const std::string& key) const { return path_ + "." + key; }
  bool Has(const std::string& key) const { return table_.contains(key); }

  double Double(const std::string& key, double fallback) const {
    const toml::node* node = table_.get(key);
    if (!node) return fallback;
    if (auto v = node->value<double>()) return *v;
    Fail(key, "expected a number");
  }

  std::int64_t Int(const std::string& key, std::int64_t fallback) const {
    const toml::node* node = table_.get(key);
    if (!node) return fallback;
    if (node->is_integer()) return *node->value<std::int64_t>();
    Fail(key, "expected an integer");
  }

  bool Bool(const std::string& key, bool fallback) const {
    const toml::node* node = table_.get(key);
    if (!node) return fallback;
    if (auto v = node->value<bool>()) return *v;
    Fail(key, "expected a boolean");
  }

  std::string String(const std::string& key, const std::string& fallback) const {
    const toml::node* node = table_.get(key);
    if (!node) return fallback;
    if (auto v = node->value<std::string>()) return *v;
    Fail(key, "expected a string");
  }

  std::vector<double> Numbers(const std::string& key, std::size_t size) const {
    const toml::array* arr = table_.get_as<toml::array>(key);
    if (!arr) Fail(key, "expected an array of " + std::to_string(size) + " numbers");
    std::vector<double> out;
    for (auto&& elem : *arr) {
      auto v = elem.value<double>();
      if (!v) Fail(key, "expected numbers");
      out.push_back(*v);
    }
    if (out.size() != size)
      Fail(key, "expected " + std::to_string(size) + " numbers");
    return out;
  }

  Vector2d Vec2(const std::string& key, const Vector2d& fallback) const {
    if (!Has(key)) return fallback;
    const auto v = Numbers(key, 2);
    return {v[0], v[1]};
  }

  const toml::array* Array(const std::string& key) const {
    if (!Has(key)) return nullptr;
    const toml::array* arr = table_.get_as<toml::array>(key);
    if (!arr) Fail(key, "expected an array");
    return arr;
  }

  const toml::table* Table(const std::string& key) const {
    if (!Has(key)) return nullptr;
    const toml::table* t = table_.get_as<toml::table>(key);
    if (!t) Fail(key, "expected a table");
    return t;
  }

  [[noreturn]] void Fail(const std::string& key, const std::string& msg) const {
    const toml::node* node = table_.get(key);
    throw ScenarioError(msg, Field(key), node ? LineOf(*node) : 0);
  }

 private:
  const toml::table& table_;
  std::string path_;
};

std::vector<PlayerIndex> IndexList(const TableReader& reader, const std::string& key) {
  std::vector<PlayerIndex> out;
  if (const toml::array* arr = reader.Array(key)) {
    for (auto&& elem : *arr) {
      auto v = elem.value<std::int64_t>();
      if (!v || *v < 0) reader.Fail(key, "expected non-negative integers");
      out.push_back(static_cast<PlayerIndex>(*v));
    }
  }
  return out;
}

std::vector<PlayerPair> PairList(const TableReader& reader, const std::string& key) {
  std::vector<PlayerPair> out;
  if (const toml::array* arr = reader.Array(key)) {
    for (auto&& elem : *arr) {
      const toml::array* pair = elem.as_array();
      if (!pair || pair->size() != 2) reader.Fail(key, "expected [i, j] pairs");
      auto a = (*pair)[0].value<std::int64_t>();
      auto b = (*pair)[1].value<std::int64_t>();
      if (!a || !b || *a < 0 || *b < 0)
        reader.Fail(key, "expected non-negative integer pairs");
      out.emplace_back(static_cast<PlayerIndex>(*a), static_cast<PlayerIndex>(*b));
    }
  }
  return out;
}

void ReadGame(const toml::table& root, ScenarioConfig& config) {
  const toml::table* game = root.get_as<toml::table>("game");
  if (!game) throw ScenarioError("missing [game] table", "[game]");
  TableReader r(*game, "[game]",
                {"name", "horizon", "dt", "mode", "seed", "jitter",
                 "interacting_pairs", "agent_occluders", "samples_per_edge",
                 "lane_half_width", "proximity_threshold"});
  config.name = r.String("name", "");
  config.horizon = static_cast<int>(r.Int("horizon", config.horizon));
  config.dt = r.Double("dt", config.dt);
  try {
    config.mode = ParseRunMode(r.String("mode", "hybrid"));
  } catch (const std::invalid_argument& e) {
    r.Fail("mode", e.what());
  }
  const std::int64_t seed = r.Int("seed", 0);
  if (seed < 0) r.Fail("seed", "must be non-negative");
  config.seed = static_cast<std::uint64_t>(seed);
  config.interacting_pairs = PairList(r, "interacting_pairs");
  config.agent_occluders = IndexList(r, "agent_occluders");
  config.samples_per_edge = static_cast<int>(r.Int("samples_per_edge", config.samples_per_edge));
  config.lane_half_width = r.Double("lane_half_width", config.lane_half_width);
  config.proximity_threshold = r.Double("proximity_threshold", config.proximity_threshold);

  if (const toml::table* jitter = r.Table("jitter")) {
    TableReader j(*jitter, "[game.jitter]", {"longitudinal", "lateral", "speed"});
    config.jitter.longitudinal = j.Double("longitudinal", 0.0);
    config.jitter.lateral = j.Double("lateral", 0.0);
    config.jitter.speed = j.Double("speed", 0.0);
  }
}

CostWeights ReadCost(const toml::table* table, const std::string& path,
                     const ScenarioConfig& config) {
  CostWeights w;
  w.lane_half_width = config.lane_half_width;
  w.proximity_threshold = config.proximity_threshold;
  if (!table) return w;
  TableReader r(*table, path,
                {"goal", "goal_weight", "nominal_speed", "nominal_speed_weight",
                 "control_weight", "lane_point", "lane_direction",
                 "lane_center_weight", "lane_crossing_weight", "lane_half_width",
                 "proximity_weight", "proximity_threshold", "proximity_overrides",
                 "min_speed", "max_speed", "speed_bound_weight"});
  w.goal = r.Vec2("goal", w.goal);
  w.goal_weight = r.Double("goal_weight", w.goal_weight);
  w.nominal_speed = r.Double("nominal_speed", w.nominal_speed);
  w.nominal_speed_weight = r.Double("nominal_speed_weight", w.nominal_speed_weight);
  if (r.Has("control_weight")) {
    // Either the diagonal (omega, accel) or a full row-major 2x2 matrix.
    const toml::array* arr = r.Array("control_weight");
    if (arr->size() == 2 && (*arr)[0].is_number()) {
      const auto d = r.Numbers("control_weight", 2);
      w.control_weight = Vector2d(d[0], d[1]).asDiagonal();
    } else {
      const auto m = r.Numbers("control_weight", 4);
      w.control_weight << m[0], m[1], m[2], m[3];
    }
  }
  w.lane.point = r.Vec2("lane_point", w.lane.point);
  const Vector2d direction = r.Vec2("lane_direction", w.lane.direction);
  if (!(direction.norm() > 0.0)) r.Fail("lane_direction", "must be non-zero");
  w.lane.direction = direction.normalized();
  w.lane_center_weight = r.Double("lane_center_weight", w.lane_center_weight);
  w.lane_crossing_weight = r.Double("lane_crossing_weight", w.lane_crossing_weight);
  w.lane_half_width = r.Double("lane_half_width", w.lane_half_width);
  w.proximity_weight = r.Double("proximity_weight", w.proximity_weight);
  w.proximity_threshold = r.Double("proximity_threshold", w.proximity_threshold);
  if (const toml::array* arr = r.Array("proximity_overrides")) {
    for (std::size_t kk = 0; kk < arr->size(); kk++) {
      const toml::table* entry = (*arr)[kk].as_table();
      if (!entry) r.Fail("proximity_overrides", "expected inline tables");
      TableReader e(*entry, r.Field("proximity_overrides") + "[" + std::to_string(kk) + "]",
                    {"player", "threshold", "offsets"});
      const std::int64_t jj = e.Int("player", -1);
      if (jj < 0) e.Fail("player", "missing or negative player index");
      CostWeights::ProximityOverride o;
      o.player = static_cast<PlayerIndex>(jj);
      o.threshold = e.Double("threshold", w.proximity_threshold);
      if (const toml::array* offsets = e.Array("offsets")) {
        o.offsets.clear();
        for (auto&& elem : *offsets) {
          auto v = elem.value<double>();
          if (!v) e.Fail("offsets", "expected numbers");
          o.offsets.push_back(*v);
        }
      }
      w.proximity_overrides.push_back(std::move(o));
    }
  }
  w.min_speed = r.Double("min_speed", w.min_speed);
  w.max_speed = r.Double("max_speed", w.max_speed);
  w.speed_bound_weight = r.Double("speed_bound_weight", w.speed_bound_weight);
  return w;
}

void ReadPlayers(const toml::table& root, ScenarioConfig& config) {
  const toml::array* players = root.get_as<toml::array>("players");
  if (!players || players->empty())
    throw ScenarioError("at least one [[players]] entry is required", "[[players]]");
  for (std::size_t ii = 0; ii < players->size(); ii++) {
    const std::string path = "[[players]][" + std::to_string(ii) + "]";
    const toml::table* table = (*players)[ii].as_table();
    if (!table) throw ScenarioError("expected a table", path);
    TableReader r(*table, path,
                  {"name", "initial_state", "length", "width", "initial_control",
                   "crossing", "cost"});
    PlayerConfig p;
    p.name = r.String("name", "player" + std::to_string(ii));
    const auto s = r.Numbers("initial_state", 4);
    p.initial_state << s[0], s[1], s[2], s[3];
    p.shape.length = r.Double("length", p.shape.length);
    p.shape.width = r.Double("width", p.shape.width);
    p.initial_control = r.Vec2("initial_control", p.initial_control);
    if (const toml::table* crossing = r.Table("crossing")) {
      TableReader c(*crossing, r.Field("crossing"), {"point", "normal"});
      p.crossing = CrossingLine{c.Vec2("point", Vector2d::Zero()),
                                c.Vec2("normal", Vector2d::UnitX())};
    }
    p.weights = ReadCost(r.Table("cost"), r.Field("cost"), config);
    config.players.push_back(std::move(p));
  }
}

void ReadOccluders(const toml::table& root, ScenarioConfig& config) {
  const toml::array* occluders = root.get_as<toml::array>("occluders");
  if (!occluders) return;
  for (std::size_t kk = 0; kk < occluders->size(); kk++) {
    const std::string path = "[[occluders]][" + std::to_string(kk) + "]";
    const toml::table* table = (*occluders)[kk].as_table();
    if (!table) throw ScenarioError("expected a table", path);
    TableReader r(*table, path, {"name", "center", "length", "width", "heading"});
    OrientedRectangle rect;
    rect.center = r.Vec2("center", Vector2d::Zero());
    rect.length = r.Double("length", 0.0);
    rect.width = r.Double("width", 0.0);
    rect.heading = r.Double("heading", 0.0);
    config.static_occluders.push_back(rect);
  }
}

void ReadSolver(const toml::table& root, ScenarioConfig& config) {
  const toml::table* solver = root.get_as<toml::table>("solver");
  if (!solver) return;
  TableReader r(*solver, "[solver]",
                {"eta", "max_iterations", "state_tolerance", "control_tolerance",
                 "control_regularization", "hessian_floor", "max_backoffs"});
  SolverSettings& s = config.solver;
  s.eta = r.Double("eta", s.eta);
  s.max_iterations = static_cast<int>(r.Int("max_iterations", s.max_iterations));
  s.state_tolerance = r.Double("state_tolerance", s.state_tolerance);
  s.control_tolerance = r.Double("control_tolerance", s.control_tolerance);
  s.control_regularization = r.Double("control_regularization", s.control_regularization);
  s.hessian_floor = r.Double("hessian_floor", s.hessian_floor);
  s.max_backoffs = static_cast<int>(r.Int("max_backoffs", s.max_backoffs));
}

}  // namespace

std::string ToString(RunMode mode) {
  switch (mode) {
    case RunMode::kHybrid: return "hybrid";
    case RunMode::kOpenLoop: return "openloop";
    case RunMode::kFeedback: return "feedback";
  }
  return "unknown";
}

RunMode ParseRunMode(const std::string& name) {
  if (name == "hybrid") return RunMode::kHybrid;
  if (name == "openloop") return RunMode::kOpenLoop;
  if (name == "feedback") return RunMode::kFeedback;
  throw std::invalid_argument("mode must be hybrid, openloop or feedback, got '" +
                              name + "'");
}

ScenarioError::ScenarioError(const std::string& what, std::string field, int line)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : "") +
                         (field.empty() ? "" : field + ": ") + what),
      field_(std::move(field)),
      line_(line) {}

void ScenarioConfig::Validate() const {
  if (!(dt > 0.0)) throw ScenarioError("must be positive", "[game].dt");
  if (horizon < 2) throw ScenarioError("must be at least 2", "[game].horizon");
  if (players.empty()) throw ScenarioError("no players", "[[players]]");
  if (samples_per_edge < 0)
    throw ScenarioError("must be non-negative", "[game].samples_per_edge");
  if (!(lane_half_width > 0.0))
    throw ScenarioError("must be positive", "[game].lane_half_width");
  if (!(proximity_threshold > 0.0))
    throw ScenarioError("must be positive", "[game].proximity_threshold");
  if (jitter.longitudinal < 0.0 || jitter.lateral < 0.0 || jitter.speed < 0.0)
    throw ScenarioError("ranges must be non-negative", "[game.jitter]");

  const std::size_t n = players.size();
  for (const auto& [ii, jj] : interacting_pairs)
    if (ii >= n || jj >= n || ii == jj)
      throw ScenarioError("pair (" + std::to_string(ii) + ", " + std::to_string(jj) +
                              ") does not name two distinct players",
                          "[game].interacting_pairs");
  for (PlayerIndex kk : agent_occluders)
    if (kk >= n)
      throw ScenarioError("player index " + std::to_string(kk) + " out of range",
                          "[game].agent_occluders");

  for (std::size_t ii = 0; ii < n; ii++) {
    const std::string path = "[[players]][" + std::to_string(ii) + "]";
    const PlayerConfig& p = players[ii];
    if (!p.initial_state.allFinite())
      throw ScenarioError("must be finite", path + ".initial_state");
    if (!(p.shape.length > 0.0)) throw ScenarioError("must be positive", path + ".length");
    if (!(p.shape.width > 0.0)) throw ScenarioError("must be positive", path + ".width");
    try {
      p.weights.Validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError("invalid value", path + ".cost." + e.what());
    }
    for (const auto& o : p.weights.proximity_overrides)
      if (o.player >= n || o.player == ii)
        throw ScenarioError("player index " + std::to_string(o.player) + " out of range",
                            path + ".cost.proximity_overrides");
  }

  for (std::size_t kk = 0; kk < static_occluders.size(); kk++) {
    const auto& o = static_occluders[kk];
    const std::string path = "[[occluders]][" + std::to_string(kk) + "]";
    if (!(o.length > 0.0)) throw ScenarioError("must be positive", path + ".length");
    if (!(o.width > 0.0)) throw ScenarioError("must be positive", path + ".width");
  }

  try {
    solver.Validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError("invalid value", std::string("[solver].") + e.what());
  }
}

ScenarioConfig ParseScenario(const std::string& toml_text, const std::string& source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    throw ScenarioError(std::string(e.description()), "",
                        static_cast<int>(e.source().begin.line));
  }
  TableReader top(root, "", {"game", "players", "occluders", "solver"});

  ScenarioConfig config;
  ReadGame(root, config);
  ReadPlayers(root, config);
  ReadOccluders(root, config);
  ReadSolver(root, config);
  config.Validate();
  return config;
}

ScenarioConfig LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open " + path, "");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str(), path);
}

VectorXd InitialState(const ScenarioConfig& config) {
  const std::size_t n = config.NumPlayers();
  VectorXd x(n * kUnicycleStateDim);
  for (PlayerIndex ii = 0; ii < n; ii++)
    x.segment<kUnicycleStateDim>(ii * kUnicycleStateDim) = config.players[ii].initial_state;
  if (config.seed == 0) return x;

  std::mt19937_64 rng(config.seed);
  auto draw = [&rng](double half_range) {
    if (half_range == 0.0) return 0.0;
    return std::uniform_real_distribution<double>(-half_range, half_range)(rng);
  };
  for (PlayerIndex ii = 0; ii < n; ii++) {
    auto s = x.segment<kUnicycleStateDim>(ii * kUnicycleStateDim);
    const double along = draw(config.jitter.longitudinal);
    const double across = draw(config.jitter.lateral);
    const double c = std::cos(s(kHeading));
    const double sn = std::sin(s(kHeading));
    s(kPosX) += along * c - across * sn;
    s(kPosY) += along * sn + across * c;
    s(kSpeed) += draw(config.jitter.speed);
  }
  return x;
}

NonlinearProblem BuildProblem(const ScenarioConfig& config) {
  NonlinearProblem problem;
  problem.dynamics = std::make_shared<UnicycleDynamics>(config.NumPlayers(), config.dt);
  std::vector<CostWeights> weights;
  for (const auto& p : config.players) weights.push_back(p.weights);
  problem.cost = std::make_shared<DrivingCost>(std::move(weights));
  problem.horizon = config.horizon;
  problem.dt = config.dt;
  problem.x0 = InitialState(config);

  bool any_control = false;
  for (const auto& p : config.players) any_control |= !p.initial_control.isZero(0.0);
  if (any_control) {
    StageControls us;
    for (const auto& p : config.players) us.push_back(p.initial_control);
    problem.initial_controls.assign(config.horizon, us);
  }
  return problem;
}

OcclusionQuery BuildOcclusionQuery(const ScenarioConfig& config) {
  OcclusionQuery query;
  for (const auto& p : config.players) query.shapes.push_back(p.shape);
  query.occluders.static_rectangles = config.static_occluders;
  query.occluders.agent_occluders = config.agent_occluders;
  query.interacting_pairs = config.interacting_pairs;
  query.samples_per_edge = config.samples_per_edge;
  return query;
}

}  // namespace hybrid_games
