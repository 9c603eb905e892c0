#include "resa/sustainability.hpp"

#include <algorithm>
#include <limits>

namespace resa {

double CarbonConfig::factor(Kind k) const {
    switch (k) {
        case Kind::Flight: return flight_kg_per_km;
        case Kind::Train: return train_kg_per_km;
        case Kind::Bus: return bus_kg_per_km;
        case Kind::CarRental: return car_kg_per_km;
        case Kind::Hotel: return 0.0;
    }
    return 0.0;
}

double carbon_estimate(const TravelOption& option, const CarbonConfig& config, int64_t nights) {
    if (is_transport(option.kind)) return option.distance_km * config.factor(option.kind);
    return static_cast<double>(nights) * config.hotel_kg_per_night *
           (1.0 - 0.5 * option.eco_rating);
}

double eco_score(const Itinerary& itinerary, const Catalog& catalog, const CarbonConfig& config,
                 const CarbonBounds& bounds) {
    Totals t = itinerary_totals(itinerary, catalog, config);
    double span = bounds.max_kg - bounds.min_kg;
    if (span <= 0.0) return 1.0;
    return 1.0 - (t.carbon_kg - bounds.min_kg) / span;
}

std::vector<GreenerSuggestion> greener_alternatives(const Itinerary& itinerary,
                                                    const Catalog& catalog,
                                                    const CarbonConfig& config) {
    std::vector<GreenerSuggestion> out;

    // The replacement must keep the chain valid, so a candidate's times are
    // boxed by the neighboring transport legs.
    std::vector<std::pair<size_t, const TravelOption*>> legs;
    for (size_t i = 0; i < itinerary.slots.size(); ++i) {
        const TravelOption* opt = catalog.by_id(itinerary.slots[i]);
        if (opt && is_transport(opt->kind)) legs.emplace_back(i, opt);
    }

    for (size_t k = 0; k < legs.size(); ++k) {
        const auto& [slot, leg] = legs[k];
        if (leg->kind != Kind::Flight || leg->distance_km > config.short_haul_km) continue;
        double leg_carbon = carbon_estimate(*leg, config, 0);
        Minutes not_before = k > 0 ? legs[k - 1].second->arrive_time
                                   : std::numeric_limits<Minutes>::min();
        Minutes not_after = k + 1 < legs.size() ? legs[k + 1].second->depart_time
                                                : std::numeric_limits<Minutes>::max();
        for (const TravelOption* train : catalog.find(Kind::Train, leg->origin, leg->destination)) {
            if (train->depart_time <= not_before || train->arrive_time >= not_after) continue;
            double train_carbon = carbon_estimate(*train, config, 0);
            if (train_carbon < leg_carbon)
                out.push_back({slot, train->id, leg_carbon - train_carbon});
        }
    }

    for (size_t i = 0; i < itinerary.slots.size(); ++i) {
        const TravelOption* opt = catalog.by_id(itinerary.slots[i]);
        if (!opt || opt->kind != Kind::Hotel) continue;
        double current = carbon_estimate(*opt, config, itinerary.nights);
        for (const TravelOption* alt : catalog.hotels_in(opt->destination)) {
            if (alt->id == opt->id || alt->eco_rating <= opt->eco_rating) continue;
            double alt_carbon = carbon_estimate(*alt, config, itinerary.nights);
            if (alt_carbon < current) out.push_back({i, alt->id, current - alt_carbon});
        }
    }

    std::sort(out.begin(), out.end(), [](const GreenerSuggestion& a, const GreenerSuggestion& b) {
        if (a.saving_kg != b.saving_kg) return a.saving_kg > b.saving_kg;
        if (a.slot != b.slot) return a.slot < b.slot;
        return a.replacement_id < b.replacement_id;
    });
    return out;
}

void to_json(json& j, const GreenerSuggestion& s) {
    j = json{{"slot", s.slot}, {"replacement_id", s.replacement_id}, {"saving_kg", s.saving_kg}};
}

void to_json(json& j, const CarbonConfig& c) {
    j = json{{"flight_kg_per_km", c.flight_kg_per_km},
             {"train_kg_per_km", c.train_kg_per_km},
             {"bus_kg_per_km", c.bus_kg_per_km},
             {"car_kg_per_km", c.car_kg_per_km},
             {"hotel_kg_per_night", c.hotel_kg_per_night},
             {"short_haul_km", c.short_haul_km}};
}

void from_json(const json& j, CarbonConfig& c) {
    c.flight_kg_per_km = j.value("flight_kg_per_km", c.flight_kg_per_km);
    c.train_kg_per_km = j.value("train_kg_per_km", c.train_kg_per_km);
    c.bus_kg_per_km = j.value("bus_kg_per_km", c.bus_kg_per_km);
    c.car_kg_per_km = j.value("car_kg_per_km", c.car_kg_per_km);
    c.hotel_kg_per_night = j.value("hotel_kg_per_night", c.hotel_kg_per_night);
    c.short_haul_km = j.value("short_haul_km", c.short_haul_km);
}

}  // namespace resa
