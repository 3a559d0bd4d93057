// Copyright 2026 The Spacetime-GR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stgr/data/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "stgr/common/error.h"

namespace stgr::data {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr std::int64_t kHourMs = 3600LL * 1000;
constexpr std::int64_t kDayMs = 24 * kHourMs;

GeoPoint Offset(const GeoPoint& center, double dx_km, double dy_km) {
  const double lat = center.lat + dy_km / geo::kKmPerDegreeLat;
  const double lon =
      center.lon + dx_km / (geo::kKmPerDegreeLon * std::cos(center.lat * kDegToRad));
  return geo::Clamp({lon, lat});
}

class Generator {
 public:
  Generator(const SynthConfig& config, std::uint64_t seed)
      : cfg_(config), rng_(seed) {}

  SynthResult Run();

 private:
  double Uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  int UniformInt(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  GeoPoint InDisk(const GeoPoint& center, double radius_km) {
    const double r = radius_km * std::sqrt(Uniform());
    const double a = 2.0 * std::numbers::pi * Uniform();
    return Offset(center, r * std::cos(a), r * std::sin(a));
  }

  void BuildCatalog();
  int CategoryIndexOf(std::string_view top_level);
  int NearestCity(const GeoPoint& p) const;
  // Picks among the nearest POIs of `category` in `city`.
  int PickPoi(int city, int category, const GeoPoint& from);
  ActionType PickActionType();
  int PickHour();
  SequenceSample MakeUser(int u, std::vector<SynthRule>& rules, int& home_city);
  SequenceSample MakeRouteUser(int u, std::vector<SynthRule>& rules);
  void MakeSft(const SequenceSample& seq, int home_city);

  const SynthConfig& cfg_;
  std::mt19937_64 rng_;
  std::vector<catalog::Poi> pois_;
  std::vector<int> poi_city_;
  std::vector<int> poi_category_;
  // by_city_cat_[city][category] -> poi positions
  std::vector<std::vector<std::vector<int>>> by_city_cat_;
  std::vector<std::vector<int>> by_city_;
  std::vector<std::vector<int>> routes_;
  SynthResult result_;
};

void Generator::BuildCatalog() {
  const int ncity = static_cast<int>(cfg_.cities.size());
  const int ncat = static_cast<int>(cfg_.categories.size());
  by_city_cat_.assign(ncity, std::vector<std::vector<int>>(ncat));
  by_city_.assign(ncity, {});
  for (int i = 0; i < cfg_.num_pois; ++i) {
    const int city = i % ncity;
    const int cat = (i / ncity) % ncat;
    catalog::Poi p;
    p.poi_id = 1000 + i;
    p.location = InDisk(cfg_.cities[city].center, cfg_.cities[city].radius_km);
    p.category = cfg_.categories[cat];
    if (cfg_.mm_dim > 0) {
      // Category signal plus per-POI noise.
      std::normal_distribution<float> noise(0.0f, 0.3f);
      p.mm_vector.resize(cfg_.mm_dim);
      for (int d = 0; d < cfg_.mm_dim; ++d) {
        p.mm_vector[d] = (d % ncat == cat ? 1.0f : 0.0f) + noise(rng_);
      }
    }
    by_city_cat_[city][cat].push_back(i);
    by_city_[city].push_back(i);
    poi_city_.push_back(city);
    poi_category_.push_back(cat);
    pois_.push_back(std::move(p));
  }
}

int Generator::CategoryIndexOf(std::string_view top_level) {
  std::vector<int> matches;
  for (int c = 0; c < static_cast<int>(cfg_.categories.size()); ++c) {
    if (TopLevel(cfg_.categories[c]) == top_level) matches.push_back(c);
  }
  if (matches.empty()) return UniformInt(0, static_cast<int>(cfg_.categories.size()) - 1);
  return matches[UniformInt(0, static_cast<int>(matches.size()) - 1)];
}

int Generator::NearestCity(const GeoPoint& p) const {
  int best = 0;
  double best_d = 1e300;
  for (int c = 0; c < static_cast<int>(cfg_.cities.size()); ++c) {
    const double d = geo::HaversineKm(p, cfg_.cities[c].center);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

int Generator::PickPoi(int city, int category, const GeoPoint& from) {
  const std::vector<int>* pool = &by_city_cat_[city][category];
  if (pool->empty()) pool = &by_city_[city];
  std::vector<int> ranked = *pool;
  if (ranked.empty()) {
    ranked.resize(pois_.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i] = static_cast<int>(i);
  }
  std::vector<double> dist(pois_.size());
  for (int i : ranked) dist[i] = geo::HaversineKm(from, pois_[i].location);
  std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;
  });
  const int k = std::min<int>(std::max(1, cfg_.nearest_choices), ranked.size());
  // Geometric preference for closer POIs.
  double total = 0.0;
  for (int r = 0; r < k; ++r) total += std::pow(0.5, r);
  double roll = Uniform() * total;
  for (int r = 0; r < k; ++r) {
    roll -= std::pow(0.5, r);
    if (roll <= 0.0) return ranked[r];
  }
  return ranked[k - 1];
}

ActionType Generator::PickActionType() {
  const double r = Uniform();
  if (r < 0.6) return ActionType::kClick;
  if (r < 0.8) return ActionType::kSearch;
  if (r < 0.95) return ActionType::kNavigate;
  return ActionType::kFavorite;
}

int Generator::PickHour() {
  const double r = Uniform();
  if (r < cfg_.noon_share) return UniformInt(11, 13);
  if (r < cfg_.noon_share + cfg_.afternoon_share) return 15;
  static constexpr int kOther[] = {7, 8, 9, 10, 14, 16, 17, 18, 19, 20, 21, 22};
  return kOther[UniformInt(0, 11)];
}

SequenceSample Generator::MakeUser(int u, std::vector<SynthRule>& rules,
                                   int& home_city) {
  const int ncity = static_cast<int>(cfg_.cities.size());
  const int ncat = static_cast<int>(cfg_.categories.size());
  SequenceSample seq;
  seq.user_id = "u" + std::to_string(u);
  seq.profile = {UniformInt(0, kNumGenders - 1), UniformInt(0, kNumAgeBuckets - 1),
                 UniformInt(0, kNumOccupations - 1)};
  home_city = UniformInt(0, ncity - 1);
  const CitySpec& home = cfg_.cities[home_city];
  const GeoPoint home_loc = InDisk(home.center, home.radius_km * 0.6);
  // Two habitual categories.
  const int fav1 = UniformInt(0, ncat - 1);
  const int fav2 = UniformInt(0, ncat - 1);

  const int n = UniformInt(cfg_.min_actions, cfg_.max_actions);
  int trip_start = -1, trip_len = 0, dest = home_city;
  if (ncity > 1 && Uniform() < cfg_.trip_probability) {
    trip_len = UniformInt(cfg_.trip_min_actions, cfg_.trip_max_actions);
    const int lo = cfg_.pre_travel_actions + 1;
    const int hi = n - trip_len;
    if (hi >= lo) {
      trip_start = UniformInt(lo, hi);
      dest = (home_city + UniformInt(1, ncity - 1)) % ncity;
    }
  }
  const GeoPoint hotel = InDisk(cfg_.cities[dest].center, cfg_.cities[dest].radius_km * 0.5);

  std::int64_t day = UniformInt(0, 29);
  int prev_hour = -1;
  for (int i = 0; i < n; ++i) {
    day += UniformInt(0, 2);
    int hour = PickHour();
    if (hour <= prev_hour && i > 0) {
      // Same calendar day must move forward in time.
      if (day == (seq.actions.back().t - cfg_.start_ms) / kDayMs) ++day;
    }
    prev_hour = hour;
    Action a;
    a.t = cfg_.start_ms + day * kDayMs + hour * kHourMs +
          UniformInt(0, 59) * 60000LL + UniformInt(0, 59) * 1000LL;
    if (!seq.actions.empty() && a.t <= seq.actions.back().t) {
      a.t = seq.actions.back().t + 60000;
    }
    const bool in_trip = trip_start >= 0 && i >= trip_start && i < trip_start + trip_len;
    const bool pre_trip = trip_start >= 0 && i >= trip_start - cfg_.pre_travel_actions &&
                          i < trip_start;
    a.g_u = in_trip ? InDisk(hotel, 0.3) : InDisk(home_loc, 0.3);
    const int here = in_trip ? dest : home_city;
    const int h = DecomposeTime(a.t).hour;

    SynthRule rule = SynthRule::kPersonal;
    int city = here;
    int cat = -1;
    if (cfg_.uniform_categories) {
      rule = SynthRule::kUniform;
      cat = UniformInt(0, ncat - 1);
    } else if (h >= 11 && h <= 13 && Uniform() < cfg_.noon_food) {
      rule = SynthRule::kNoonFood;
      cat = CategoryIndexOf("food");
    } else if (h == 15 && Uniform() < cfg_.afternoon_cafe) {
      rule = SynthRule::kAfternoonCafe;
      cat = CategoryIndexOf("cafe");
    } else if (in_trip && Uniform() < cfg_.travel_attraction) {
      rule = SynthRule::kTravelAttraction;
      cat = CategoryIndexOf("attraction");
    } else if (pre_trip) {
      rule = SynthRule::kPreTravel;
      city = dest;
      cat = CategoryIndexOf("attraction");
    } else {
      const double r = Uniform();
      cat = r < 0.45 ? fav1 : r < 0.9 ? fav2 : UniformInt(0, ncat - 1);
    }
    const GeoPoint from = city == here ? a.g_u : cfg_.cities[city].center;
    const int poi = PickPoi(city, cat, from);
    a.poi = pois_[poi].poi_id;
    a.g_p = pois_[poi].location;
    a.category = pois_[poi].category;
    a.action_type = PickActionType();
    const std::string top = TopLevel(a.category);
    a.interest = std::find(cfg_.functional_top_levels.begin(),
                           cfg_.functional_top_levels.end(),
                           top) == cfg_.functional_top_levels.end()
                     ? 1
                     : 0;
    seq.actions.push_back(std::move(a));
    rules.push_back(rule);
  }
  return seq;
}

SequenceSample Generator::MakeRouteUser(int u, std::vector<SynthRule>& rules) {
  SequenceSample seq;
  seq.user_id = "u" + std::to_string(u);
  seq.profile = {UniformInt(0, kNumGenders - 1), UniformInt(0, kNumAgeBuckets - 1),
                 UniformInt(0, kNumOccupations - 1)};
  const auto& route = routes_[seq.profile.occupation];
  const int n = UniformInt(cfg_.min_actions, cfg_.max_actions);
  int pos = UniformInt(0, static_cast<int>(route.size()) - 1);
  std::int64_t t = cfg_.start_ms + UniformInt(0, 29) * kDayMs;
  for (int i = 0; i < n; ++i) {
    t += kDayMs / 2 + UniformInt(0, 11) * kHourMs;
    const catalog::Poi& p = pois_[route[pos]];
    Action a;
    a.t = t;
    a.g_u = p.location;
    a.poi = p.poi_id;
    a.g_p = p.location;
    a.category = p.category;
    a.action_type = ActionType::kClick;
    a.interest = 1;
    seq.actions.push_back(std::move(a));
    rules.push_back(SynthRule::kRoute);
    pos = (pos + 1) % static_cast<int>(route.size());
  }
  return seq;
}

void Generator::MakeSft(const SequenceSample& seq, int home_city) {
  const int n = static_cast<int>(seq.actions.size());
  if (n < 4) return;
  (void)home_city;
  for (int s = 0; s < cfg_.sft_per_user; ++s) {
    const int m = UniformInt(3, n - 1);
    const Action& target = seq.actions[m];
    SftSample sample;
    sample.user_id = seq.user_id + "@" + std::to_string(m);
    sample.profile = seq.profile;
    sample.history.assign(seq.actions.begin(), seq.actions.begin() + m);
    sample.request = {target.t, target.g_u};
    sample.positives = {target.poi};
    std::vector<int> pool = by_city_[NearestCity(target.g_u)];
    std::shuffle(pool.begin(), pool.end(), rng_);
    for (int i : pool) {
      if (static_cast<int>(sample.negatives.size()) >= cfg_.sft_negatives) break;
      if (pois_[i].poi_id == target.poi) continue;
      sample.negatives.push_back(pois_[i].poi_id);
    }
    result_.sft.push_back(std::move(sample));
  }
}

SynthResult Generator::Run() {
  cfg_.Validate();
  BuildCatalog();
  if (cfg_.route_mode) {
    routes_.resize(kNumOccupations);
    for (auto& r : routes_) {
      r.resize(pois_.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = static_cast<int>(i);
      std::shuffle(r.begin(), r.end(), rng_);
    }
  }
  for (int u = 0; u < cfg_.num_users; ++u) {
    std::vector<SynthRule> rules;
    int home_city = 0;
    SequenceSample seq = cfg_.route_mode ? MakeRouteUser(u, rules)
                                         : MakeUser(u, rules, home_city);
    if (cfg_.route_mode) home_city = NearestCity(seq.actions.front().g_u);
    MakeSft(seq, home_city);
    result_.dataset.push_back(std::move(seq));
    result_.rules.push_back(std::move(rules));
    result_.home_city.push_back(home_city);
  }
  result_.catalog = catalog::Catalog::FromPois(pois_);
  return std::move(result_);
}

}  // namespace

std::string_view SynthRuleName(SynthRule r) {
  switch (r) {
    case SynthRule::kNoonFood:
      return "noon_food";
    case SynthRule::kAfternoonCafe:
      return "afternoon_cafe";
    case SynthRule::kTravelAttraction:
      return "travel_attraction";
    case SynthRule::kPreTravel:
      return "pre_travel";
    case SynthRule::kPersonal:
      return "personal";
    case SynthRule::kUniform:
      return "uniform";
    case SynthRule::kRoute:
      return "route";
  }
  return "personal";
}

std::string TopLevel(const std::vector<std::string>& category) {
  return category.empty() ? std::string() : category.front();
}

SynthConfig SynthConfig::Default() {
  SynthConfig c;
  c.cities = {
      {"north", {116.40, 39.90}, 8.0},
      {"east", {121.47, 31.23}, 8.0},
      {"south", {113.26, 23.13}, 8.0},
  };
  c.categories = {
      {"food", "noodles"},      {"food", "French food"}, {"food", "hotpot"},
      {"cafe", "coffee"},       {"cafe", "tea house"},   {"attraction", "park"},
      {"attraction", "museum"}, {"shopping", "mall"},    {"shopping", "market"},
      {"office", "building"},   {"medical", "hospital"}, {"entertainment", "cinema"},
  };
  return c;
}

void SynthConfig::Validate() const {
  if (num_pois < 1) throw DataError("synth: num_pois must be >= 1");
  if (num_users < 0) throw DataError("synth: num_users must be >= 0");
  if (cities.empty()) throw DataError("synth: at least one city is required");
  if (categories.empty()) throw DataError("synth: at least one category is required");
  if (min_actions < 1 || max_actions < min_actions) {
    throw DataError("synth: need 1 <= min_actions <= max_actions");
  }
  if (trip_min_actions < 1 || trip_max_actions < trip_min_actions) {
    throw DataError("synth: need 1 <= trip_min_actions <= trip_max_actions");
  }
  if (noon_share < 0 || afternoon_share < 0 || noon_share + afternoon_share > 1) {
    throw DataError("synth: hour shares must be non-negative and sum to <= 1");
  }
}

SynthResult SynthGenerate(const SynthConfig& config, std::uint64_t seed) {
  return Generator(config, seed).Run();
}

}  // namespace stgr::data
