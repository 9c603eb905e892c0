#include "resa/model.hpp"

#include <algorithm>

#include "resa/sustainability.hpp"

namespace resa {

bool is_transport(Kind k) { return k != Kind::Hotel; }

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::Flight: return "flight";
        case Kind::Train: return "train";
        case Kind::Bus: return "bus";
        case Kind::CarRental: return "car_rental";
        case Kind::Hotel: return "hotel";
    }
    throw std::invalid_argument("bad kind");
}

Kind kind_from_name(const std::string& name) {
    if (name == "flight") return Kind::Flight;
    if (name == "train") return Kind::Train;
    if (name == "bus") return Kind::Bus;
    if (name == "car_rental") return Kind::CarRental;
    if (name == "hotel") return Kind::Hotel;
    throw std::invalid_argument("unknown kind: " + name);
}

std::string budget_band_name(BudgetBand b) {
    switch (b) {
        case BudgetBand::Low: return "low";
        case BudgetBand::Mid: return "mid";
        case BudgetBand::High: return "high";
    }
    throw std::invalid_argument("bad budget band");
}

BudgetBand budget_band_from_name(const std::string& name) {
    if (name == "low") return BudgetBand::Low;
    if (name == "mid") return BudgetBand::Mid;
    if (name == "high") return BudgetBand::High;
    throw std::invalid_argument("unknown budget band: " + name);
}

void TravelOption::check() const {
    if (id.empty()) throw std::invalid_argument("option id empty");
    if (price < 0) throw std::invalid_argument(id + ": price negative");
    if (capacity < 0) throw std::invalid_argument(id + ": capacity negative");
    if (distance_km < 0) throw std::invalid_argument(id + ": distance negative");
    if (eco_rating < 0.0 || eco_rating > 1.0)
        throw std::invalid_argument(id + ": eco_rating outside [0,1]");
    if (is_transport(kind)) {
        if (arrive_time <= depart_time)
            throw std::invalid_argument(id + ": arrive_time not after depart_time");
        if (origin.empty() || destination.empty())
            throw std::invalid_argument(id + ": transport option needs origin and destination");
    } else {
        if (destination.empty()) throw std::invalid_argument(id + ": hotel needs a city");
    }
}

void Catalog::build_index() {
    id_index_.clear();
    route_index_.clear();
    for (size_t i = 0; i < options.size(); ++i) {
        const auto& o = options[i];
        if (!id_index_.emplace(o.id, i).second)
            throw std::invalid_argument("duplicate option id: " + o.id);
        route_index_[{static_cast<int>(o.kind), o.origin, o.destination}].push_back(i);
    }
}

const TravelOption* Catalog::by_id(const std::string& id) const {
    auto it = id_index_.find(id);
    return it == id_index_.end() ? nullptr : &options[it->second];
}

std::vector<const TravelOption*> Catalog::find(Kind kind, const std::string& origin,
                                               const std::string& destination) const {
    std::vector<const TravelOption*> out;
    auto it = route_index_.find({static_cast<int>(kind), origin, destination});
    if (it == route_index_.end()) return out;
    out.reserve(it->second.size());
    for (size_t i : it->second) out.push_back(&options[i]);
    return out;
}

std::vector<const TravelOption*> Catalog::hotels_in(const std::string& city) const {
    return find(Kind::Hotel, "", city);
}

FitnessWeights::FitnessWeights(double cost, double time, double pref, double eco) {
    if (cost < 0 || time < 0 || pref < 0 || eco < 0)
        throw std::invalid_argument("fitness weights must be >= 0");
    double sum = cost + time + pref + eco;
    if (sum <= 0) throw std::invalid_argument("fitness weights sum to zero");
    w_cost = cost / sum;
    w_time = time / sum;
    w_pref = pref / sum;
    w_eco = eco / sum;
}

void TripRequest::check() const {
    if (origin == destination) throw std::invalid_argument("origin equals destination");
    if (latest_arrival <= earliest_departure)
        throw std::invalid_argument("latest_arrival not after earliest_departure");
    if (budget <= 0) throw std::invalid_argument("budget must be positive");
    if (nights < 0) throw std::invalid_argument("nights negative");
}

Verdict validate_itinerary(const Itinerary& itinerary, const Catalog& catalog,
                           const TripRequest& request) {
    Verdict v;
    if (itinerary.slots.empty()) {
        v.violations.push_back("empty itinerary");
        return v;
    }

    // Resolve ids; a dangling slot is reported and skipped from the chain.
    std::vector<std::pair<size_t, const TravelOption*>> legs;
    for (size_t i = 0; i < itinerary.slots.size(); ++i) {
        const TravelOption* opt = catalog.by_id(itinerary.slots[i]);
        if (!opt) {
            v.violations.push_back("dangling reference at slot " + std::to_string(i));
            continue;
        }
        if (is_transport(opt->kind)) legs.emplace_back(i, opt);
    }

    if (!legs.empty()) {
        if (legs.front().second->origin != request.origin)
            v.violations.push_back("first leg origin mismatch");
        for (size_t k = 1; k < legs.size(); ++k) {
            const auto& [slot, leg] = legs[k];
            const TravelOption* prev = legs[k - 1].second;
            if (leg->origin != prev->destination)
                v.violations.push_back("broken chain at slot " + std::to_string(slot));
            if (leg->depart_time <= prev->arrive_time)
                v.violations.push_back("non-increasing times at slot " + std::to_string(slot));
        }
        if (legs.front().second->depart_time < request.earliest_departure)
            v.violations.push_back("departure before window");
        if (legs.back().second->arrive_time > request.latest_arrival)
            v.violations.push_back("arrival after window");
    }
    return v;
}

InvalidItinerary::InvalidItinerary(std::vector<std::string> v)
    : std::runtime_error("invalid itinerary"), violations(std::move(v)) {}

Totals itinerary_totals(const Itinerary& itinerary, const Catalog& catalog,
                        const CarbonConfig& carbon) {
    std::vector<std::string> dangling;
    for (size_t i = 0; i < itinerary.slots.size(); ++i)
        if (!catalog.by_id(itinerary.slots[i]))
            dangling.push_back("dangling reference at slot " + std::to_string(i));
    if (!dangling.empty()) throw InvalidItinerary(std::move(dangling));

    Totals t;
    for (const auto& id : itinerary.slots) {
        const TravelOption* opt = catalog.by_id(id);
        if (is_transport(opt->kind)) {
            t.cost += opt->price;
            t.time += opt->arrive_time - opt->depart_time;
        } else {
            t.cost += opt->price * static_cast<double>(itinerary.nights);
        }
        t.carbon_kg += carbon_estimate(*opt, carbon, itinerary.nights);
    }
    return t;
}

// --- JSON ---

void to_json(json& j, const TravelOption& o) {
    j = json{{"id", o.id},
             {"kind", kind_name(o.kind)},
             {"origin", o.origin},
             {"destination", o.destination},
             {"depart_time", o.depart_time},
             {"arrive_time", o.arrive_time},
             {"price", o.price},
             {"distance_km", o.distance_km},
             {"capacity", o.capacity},
             {"eco_rating", o.eco_rating}};
}

void from_json(const json& j, TravelOption& o) {
    j.at("id").get_to(o.id);
    o.kind = kind_from_name(j.at("kind").get<std::string>());
    j.at("origin").get_to(o.origin);
    j.at("destination").get_to(o.destination);
    j.at("depart_time").get_to(o.depart_time);
    j.at("arrive_time").get_to(o.arrive_time);
    j.at("price").get_to(o.price);
    j.at("distance_km").get_to(o.distance_km);
    j.at("capacity").get_to(o.capacity);
    j.at("eco_rating").get_to(o.eco_rating);
}

void to_json(json& j, const Catalog& c) {
    j = json{{"options", c.options}, {"cities", c.cities}};
}

void from_json(const json& j, Catalog& c) {
    j.at("options").get_to(c.options);
    j.at("cities").get_to(c.cities);
    c.build_index();
}

void to_json(json& j, const FitnessWeights& w) {
    j = json{{"w_cost", w.w_cost}, {"w_time", w.w_time}, {"w_pref", w.w_pref}, {"w_eco", w.w_eco}};
}

void from_json(const json& j, FitnessWeights& w) {
    w = FitnessWeights(j.at("w_cost").get<double>(), j.at("w_time").get<double>(),
                       j.at("w_pref").get<double>(), j.at("w_eco").get<double>());
}

static std::set<Kind> kinds_from_json(const json& j) {
    std::set<Kind> out;
    for (const auto& name : j) out.insert(kind_from_name(name.get<std::string>()));
    return out;
}

static json kinds_to_json(const std::set<Kind>& kinds) {
    json arr = json::array();
    for (Kind k : kinds) arr.push_back(kind_name(k));
    return arr;
}

void to_json(json& j, const TripRequest& r) {
    j = json{{"origin", r.origin},
             {"destination", r.destination},
             {"earliest_departure", r.earliest_departure},
             {"latest_arrival", r.latest_arrival},
             {"nights", r.nights},
             {"budget", r.budget},
             {"preferred_modes", kinds_to_json(r.preferred_modes)},
             {"weights", r.weights}};
}

void from_json(const json& j, TripRequest& r) {
    j.at("origin").get_to(r.origin);
    j.at("destination").get_to(r.destination);
    j.at("earliest_departure").get_to(r.earliest_departure);
    j.at("latest_arrival").get_to(r.latest_arrival);
    j.at("nights").get_to(r.nights);
    j.at("budget").get_to(r.budget);
    r.preferred_modes = kinds_from_json(j.at("preferred_modes"));
    r.weights = j.at("weights").get<FitnessWeights>();
}

void to_json(json& j, const Itinerary& it) {
    j = json{{"slots", it.slots},
             {"nights", it.nights},
             {"total_cost", it.total_cost},
             {"total_time", it.total_time},
             {"total_carbon_kg", it.total_carbon_kg}};
}

void from_json(const json& j, Itinerary& it) {
    j.at("slots").get_to(it.slots);
    j.at("nights").get_to(it.nights);
    it.total_cost = j.value("total_cost", 0.0);
    it.total_time = j.value("total_time", int64_t{0});
    it.total_carbon_kg = j.value("total_carbon_kg", 0.0);
}

void to_json(json& j, const UserProfile& p) {
    json history = json::array();
    for (const auto& [id, rating] : p.booking_history)
        history.push_back(json{{"option_id", id}, {"rating", rating}});
    j = json{{"user_id", p.user_id},
             {"preferred_modes", kinds_to_json(p.preferred_modes)},
             {"budget_band", budget_band_name(p.budget_band)},
             {"eco_affinity", p.eco_affinity},
             {"booking_history", history}};
}

void from_json(const json& j, UserProfile& p) {
    j.at("user_id").get_to(p.user_id);
    p.preferred_modes = kinds_from_json(j.at("preferred_modes"));
    p.budget_band = budget_band_from_name(j.at("budget_band").get<std::string>());
    j.at("eco_affinity").get_to(p.eco_affinity);
    p.booking_history.clear();
    for (const auto& e : j.at("booking_history"))
        p.booking_history.emplace_back(e.at("option_id").get<std::string>(),
                                       e.at("rating").get<double>());
}

}  // namespace resa
