#include "resa/synthgen.hpp"

#include <cmath>
#include <fstream>

#include "resa/rng.hpp"

namespace resa {

namespace fs = std::filesystem;

void ScenarioParams::check() const {
    if (n_cities < 2) throw std::invalid_argument("degenerate scenario: n_cities < 2");
    if (options_per_route < 1) throw std::invalid_argument("options_per_route < 1");
    if (n_users < 0) throw std::invalid_argument("n_users negative");
    if (n_history_days < 1) throw std::invalid_argument("n_history_days < 1");
    if (noise_sigma < 0) throw std::invalid_argument("noise_sigma negative");
    if (seasonal_amplitude < 0) throw std::invalid_argument("seasonal_amplitude negative");
    for (const auto& [kind, price] : base_price)
        if (price <= 0) throw std::invalid_argument("base_price must be positive");
}

double seasonal_sin(int day_of_year) { return std::sin(2.0 * M_PI * day_of_year / 366.0); }
double seasonal_cos(int day_of_year) { return std::cos(2.0 * M_PI * day_of_year / 366.0); }

double GeneratingLaw::clean_price(Kind kind, double distance_km, int64_t days_before,
                                  int day_of_year, bool peak) const {
    return base_price.at(kind) + beta_distance * distance_km +
           beta_days_before * static_cast<double>(days_before) +
           a_sin * seasonal_sin(day_of_year) + a_cos * seasonal_cos(day_of_year) +
           (peak ? peak_bump : 0.0);
}

static std::string city_code(int i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "C%03d", i);
    return buf;
}

static GeneratingLaw law_from_params(const ScenarioParams& p) {
    GeneratingLaw law;
    law.base_price = p.base_price;
    law.a_sin = p.seasonal_amplitude;
    law.a_cos = 0.6 * p.seasonal_amplitude;
    law.noise_sigma = p.noise_sigma;
    return law;
}

struct CityLayout {
    std::vector<std::string> codes;
    std::vector<std::pair<double, double>> coords;

    double distance_km(int i, int j) const {
        double dx = coords[i].first - coords[j].first;
        double dy = coords[i].second - coords[j].second;
        return std::sqrt(dx * dx + dy * dy) * 100.0;
    }
};

static CityLayout layout_cities(const ScenarioParams& params) {
    SplitMix64 rng = SplitMix64(params.seed).fork(1);
    CityLayout layout;
    for (int i = 0; i < params.n_cities; ++i) {
        layout.codes.push_back(city_code(i));
        layout.coords.emplace_back(rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0));
    }
    return layout;
}

static int speed_kmh(Kind k) {
    switch (k) {
        case Kind::Flight: return 700;
        case Kind::Train: return 120;
        case Kind::Bus: return 80;
        case Kind::CarRental: return 90;
        default: return 1;
    }
}

Catalog gen_catalog(const ScenarioParams& params) {
    params.check();
    CityLayout layout = layout_cities(params);
    SplitMix64 rng = SplitMix64(params.seed).fork(2);
    GeneratingLaw law = law_from_params(params);

    Catalog cat;
    for (const auto& code : layout.codes) cat.cities.insert(code);

    Minutes horizon = static_cast<Minutes>(params.n_history_days) * 1440;
    int route_idx = 0;
    for (int i = 0; i < params.n_cities; ++i) {
        for (int j = 0; j < params.n_cities; ++j) {
            if (i == j) continue;
            double dist = layout.distance_km(i, j);
            for (int k = 0; k < params.options_per_route; ++k) {
                Kind kind = kTransportKinds[(route_idx + k) % 4];
                // Even option indexes depart in the first half of the horizon,
                // odd ones in the second: a full-horizon round trip then always
                // has an outbound and a return candidate.
                int64_t half = params.n_history_days / 2;
                int64_t day = k % 2 == 0 ? rng.uniform_int(int64_t{0}, std::max<int64_t>(0, half - 1))
                                         : rng.uniform_int(half, params.n_history_days - 1);
                Minutes depart = day * 1440 + rng.uniform_int(int64_t{360}, int64_t{1200});
                int duration = std::max<int>(
                    30, static_cast<int>(dist / speed_kmh(kind) * 60.0) +
                            (kind == Kind::Flight ? 45 : 0));
                int day_of_year = static_cast<int>(day % 366) + 1;
                bool peak = params.peak_days.count(day_of_year) > 0;

                TravelOption o;
                o.id = kind_name(kind).substr(0, 1) + "_" + layout.codes[i] + "_" +
                       layout.codes[j] + "_" + std::to_string(k);
                o.kind = kind;
                o.origin = layout.codes[i];
                o.destination = layout.codes[j];
                o.depart_time = depart;
                o.arrive_time = depart + duration;
                o.price = std::max(1.0, law.clean_price(kind, dist, 0, day_of_year, peak));
                o.distance_km = dist;
                o.capacity = rng.uniform_int(int64_t{50}, int64_t{200});
                o.eco_rating = 0.0;
                o.check();
                cat.options.push_back(std::move(o));
            }
            ++route_idx;
        }
    }

    for (int i = 0; i < params.n_cities; ++i) {
        for (int k = 0; k < params.options_per_route; ++k) {
            TravelOption h;
            h.id = "h_" + layout.codes[i] + "_" + std::to_string(k);
            h.kind = Kind::Hotel;
            h.origin = "";
            h.destination = layout.codes[i];
            h.depart_time = 0;
            h.arrive_time = horizon;
            h.price = std::max(1.0, params.base_price.at(Kind::Hotel) * rng.uniform(0.7, 1.5));
            h.distance_km = 0.0;
            h.capacity = rng.uniform_int(int64_t{100}, int64_t{400});
            h.eco_rating = rng.uniform();
            h.check();
            cat.options.push_back(std::move(h));
        }
    }

    cat.build_index();
    return cat;
}

std::vector<UserProfile> gen_users(const ScenarioParams& params) {
    params.check();
    SplitMix64 rng = SplitMix64(params.seed).fork(3);
    std::vector<UserProfile> users;
    users.reserve(params.n_users);
    for (int u = 0; u < params.n_users; ++u) {
        UserProfile p;
        char buf[16];
        std::snprintf(buf, sizeof buf, "U%04d", u);
        p.user_id = buf;
        for (Kind k : kTransportKinds)
            if (rng.bernoulli(0.4)) p.preferred_modes.insert(k);
        p.budget_band = static_cast<BudgetBand>(rng.uniform_int(uint64_t{3}));
        p.eco_affinity = rng.uniform();
        users.push_back(std::move(p));
    }
    return users;
}

static double preference_match(const UserProfile& user, const TravelOption& opt) {
    double mode_part;
    if (!is_transport(opt.kind) || user.preferred_modes.empty())
        mode_part = 0.5;
    else
        mode_part = user.preferred_modes.count(opt.kind) ? 1.0 : 0.0;
    double eco_part = is_transport(opt.kind)
                          ? 0.5
                          : 1.0 - std::abs(user.eco_affinity - opt.eco_rating);
    return 0.5 * mode_part + 0.5 * eco_part;
}

History gen_history(const ScenarioParams& params, const Catalog& catalog,
                    std::vector<UserProfile>& users) {
    params.check();
    if (catalog.empty()) throw std::invalid_argument("empty catalog");
    SplitMix64 rng = SplitMix64(params.seed).fork(4);

    History hist;
    hist.law = law_from_params(params);

    std::vector<std::string> cities(catalog.cities.begin(), catalog.cities.end());
    for (int day = 1; day <= params.n_history_days; ++day) {
        int day_of_year = (day - 1) % 366 + 1;
        bool peak = params.peak_days.count(day_of_year) > 0;
        for (const auto& from : cities) {
            for (const auto& to : cities) {
                if (from == to) continue;
                // One quote per route per day, rotating over the route's options.
                std::vector<const TravelOption*> route;
                for (Kind k : kTransportKinds) {
                    auto found = catalog.find(k, from, to);
                    route.insert(route.end(), found.begin(), found.end());
                }
                if (route.empty()) continue;
                const TravelOption* opt = route[rng.uniform_int(route.size())];
                PriceObservation obs;
                obs.origin = from;
                obs.destination = to;
                obs.kind = opt->kind;
                obs.day_of_year = day_of_year;
                obs.days_before_departure = rng.uniform_int(int64_t{0}, int64_t{30});
                obs.is_peak = peak ? 1 : 0;
                obs.distance_km = opt->distance_km;
                obs.observed_price =
                    hist.law.clean_price(opt->kind, obs.distance_km, obs.days_before_departure,
                                         day_of_year, peak) +
                    (params.noise_sigma > 0 ? rng.normal(0.0, params.noise_sigma) : 0.0);
                obs.observed_price = std::max(0.01, obs.observed_price);
                hist.observations.push_back(std::move(obs));
            }
            // One hotel quote per city per day.
            if (!catalog.hotels_in(from).empty()) {
                PriceObservation obs;
                obs.origin = "";
                obs.destination = from;
                obs.kind = Kind::Hotel;
                obs.day_of_year = day_of_year;
                obs.days_before_departure = rng.uniform_int(int64_t{0}, int64_t{30});
                obs.is_peak = peak ? 1 : 0;
                obs.distance_km = 0.0;
                obs.observed_price =
                    hist.law.clean_price(Kind::Hotel, 0.0, obs.days_before_departure, day_of_year,
                                         peak) +
                    (params.noise_sigma > 0 ? rng.normal(0.0, params.noise_sigma) : 0.0);
                obs.observed_price = std::max(0.01, obs.observed_price);
                hist.observations.push_back(std::move(obs));
            }
        }
    }

    // Seeded booking histories whose ratings track preference match.
    for (auto& user : users) {
        user.booking_history.clear();
        int n = static_cast<int>(rng.uniform_int(int64_t{2}, int64_t{8}));
        for (int b = 0; b < n; ++b) {
            const TravelOption& opt = catalog.options[rng.uniform_int(catalog.options.size())];
            double match = preference_match(user, opt);
            double rating = 1.0 + 4.0 * match + rng.normal(0.0, 0.3);
            rating = std::round(std::clamp(rating, 1.0, 5.0));
            user.booking_history.emplace_back(opt.id, rating);
        }
    }

    return hist;
}

Scenario gen_scenario(const ScenarioParams& params) {
    Scenario s;
    s.params = params;
    s.catalog = gen_catalog(params);
    s.users = gen_users(params);
    s.history = gen_history(params, s.catalog, s.users);
    return s;
}

static void write_file(const fs::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

static json read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return json::parse(in);
}

void save_scenario(const Scenario& scenario, const fs::path& dir) {
    fs::create_directories(dir);
    write_file(dir / "catalog.json", scenario.catalog);
    write_file(dir / "users.json", json{{"users", scenario.users}});
    write_file(dir / "history.json", json{{"observations", scenario.history.observations}});
    write_file(dir / "meta.json", json{{"seed", scenario.params.seed},
                                       {"params", scenario.params},
                                       {"law", scenario.history.law}});
}

Scenario load_scenario(const fs::path& dir) {
    Scenario s;
    json meta = read_file(dir / "meta.json");
    s.params = meta.at("params").get<ScenarioParams>();
    s.history.law = meta.at("law").get<GeneratingLaw>();
    s.catalog = read_file(dir / "catalog.json").get<Catalog>();
    read_file(dir / "users.json").at("users").get_to(s.users);
    read_file(dir / "history.json").at("observations").get_to(s.history.observations);
    return s;
}

// --- JSON ---

void to_json(json& j, const ScenarioParams& p) {
    json base = json::object();
    for (const auto& [kind, price] : p.base_price) base[kind_name(kind)] = price;
    j = json{{"seed", p.seed},
             {"n_cities", p.n_cities},
             {"options_per_route", p.options_per_route},
             {"n_users", p.n_users},
             {"n_history_days", p.n_history_days},
             {"base_price", base},
             {"seasonal_amplitude", p.seasonal_amplitude},
             {"noise_sigma", p.noise_sigma},
             {"peak_days", p.peak_days}};
}

void from_json(const json& j, ScenarioParams& p) {
    j.at("seed").get_to(p.seed);
    j.at("n_cities").get_to(p.n_cities);
    j.at("options_per_route").get_to(p.options_per_route);
    j.at("n_users").get_to(p.n_users);
    j.at("n_history_days").get_to(p.n_history_days);
    p.base_price.clear();
    for (const auto& [name, price] : j.at("base_price").items())
        p.base_price[kind_from_name(name)] = price.get<double>();
    j.at("seasonal_amplitude").get_to(p.seasonal_amplitude);
    j.at("noise_sigma").get_to(p.noise_sigma);
    p.peak_days = j.at("peak_days").get<std::set<int>>();
}

void to_json(json& j, const PriceObservation& o) {
    j = json{{"origin", o.origin},
             {"destination", o.destination},
             {"kind", kind_name(o.kind)},
             {"day_of_year", o.day_of_year},
             {"days_before_departure", o.days_before_departure},
             {"is_peak", o.is_peak},
             {"distance_km", o.distance_km},
             {"observed_price", o.observed_price}};
}

void from_json(const json& j, PriceObservation& o) {
    j.at("origin").get_to(o.origin);
    j.at("destination").get_to(o.destination);
    o.kind = kind_from_name(j.at("kind").get<std::string>());
    j.at("day_of_year").get_to(o.day_of_year);
    j.at("days_before_departure").get_to(o.days_before_departure);
    j.at("is_peak").get_to(o.is_peak);
    j.at("distance_km").get_to(o.distance_km);
    j.at("observed_price").get_to(o.observed_price);
}

void to_json(json& j, const GeneratingLaw& g) {
    json base = json::object();
    for (const auto& [kind, price] : g.base_price) base[kind_name(kind)] = price;
    j = json{{"base_price", base},
             {"beta_distance", g.beta_distance},
             {"beta_days_before", g.beta_days_before},
             {"a_sin", g.a_sin},
             {"a_cos", g.a_cos},
             {"peak_bump", g.peak_bump},
             {"noise_sigma", g.noise_sigma}};
}

void from_json(const json& j, GeneratingLaw& g) {
    g.base_price.clear();
    for (const auto& [name, price] : j.at("base_price").items())
        g.base_price[kind_from_name(name)] = price.get<double>();
    j.at("beta_distance").get_to(g.beta_distance);
    j.at("beta_days_before").get_to(g.beta_days_before);
    j.at("a_sin").get_to(g.a_sin);
    j.at("a_cos").get_to(g.a_cos);
    j.at("peak_bump").get_to(g.peak_bump);
    j.at("noise_sigma").get_to(g.noise_sigma);
}

}  // namespace resa
