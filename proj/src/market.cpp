#include "farmtrade/market.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace farmtrade {

std::optional<double> supply_demand_ratio(double tsp, double tbp) {
    if (tsp < 0.0 || tbp < 0.0) {
        throw InvariantError("supply and demand totals must be nonnegative");
    }
    if (tbp == 0.0) return std::nullopt;
    return tsp / tbp;
}

double internal_selling_price(double sdr, double lambda_sell, double lambda_buy) {
    if (!(lambda_sell > 0.0) || !(lambda_sell < lambda_buy)) {
        throw ConfigError("internal pricing requires 0 < lambda_sell < lambda_buy");
    }
    if (sdr < 0.0) {
        throw InvariantError("supply-demand ratio must be nonnegative");
    }
    if (sdr > 1.0) return lambda_sell;
    return (lambda_sell * lambda_buy) / ((lambda_buy - lambda_sell) * sdr + lambda_sell);
}

double internal_buying_price(double isp, double sdr, double lambda_buy) {
    if (sdr < 0.0) {
        throw InvariantError("supply-demand ratio must be nonnegative");
    }
    if (sdr > 1.0) return lambda_buy;
    return isp * sdr + lambda_buy * (1.0 - sdr);
}

namespace {

void validate_book(const OrderBook& book) {
    std::set<std::string> offer_ids;
    std::set<std::string> bid_ids;
    for (const Order& order : book.offers) {
        if (!(order.quantity_kwh > 0.0)) {
            throw InvariantError("offer from " + order.farm_id + " has nonpositive quantity");
        }
        if (!offer_ids.insert(order.farm_id).second) {
            throw InvariantError("farm " + order.farm_id + " appears twice on the sell side");
        }
    }
    for (const Order& order : book.bids) {
        if (!(order.quantity_kwh > 0.0)) {
            throw InvariantError("bid from " + order.farm_id + " has nonpositive quantity");
        }
        if (!bid_ids.insert(order.farm_id).second) {
            throw InvariantError("farm " + order.farm_id + " appears twice on the buy side");
        }
        if (offer_ids.count(order.farm_id) != 0) {
            throw InvariantError("farm " + order.farm_id + " appears on both market sides");
        }
    }
}

} // namespace

MarketResult clear_market(const OrderBook& book, const TariffSchedule& schedule,
                          bool p2p_enabled) {
    validate_book(book);

    const double lambda_sell = schedule.feed_in_price;
    const double lambda_buy = grid_price(book.tier, schedule);

    // farm_id-ordered map so every accumulation below runs in one fixed
    // order regardless of how the book was assembled.
    std::map<std::string, FarmSettlement> rows;
    auto row = [&rows](const std::string& farm_id) -> FarmSettlement& {
        FarmSettlement& r = rows[farm_id];
        r.farm_id = farm_id;
        return r;
    };

    MarketResult result;
    for (const Order& order : book.offers) result.tsp += order.quantity_kwh;
    for (const Order& order : book.bids) result.tbp += order.quantity_kwh;
    result.quote.sdr = supply_demand_ratio(result.tsp, result.tbp);

    if (!p2p_enabled) {
        result.quote.isp = lambda_sell;
        result.quote.ibp = lambda_buy;
        for (const Order& order : book.offers) {
            FarmSettlement& r = row(order.farm_id);
            r.sold_grid_kwh = order.quantity_kwh;
            r.revenue = order.quantity_kwh * lambda_sell;
        }
        for (const Order& order : book.bids) {
            FarmSettlement& r = row(order.farm_id);
            r.bought_grid_kwh = order.quantity_kwh;
            r.cost = order.quantity_kwh * lambda_buy;
        }
        result.grid_export_kwh = result.tsp;
        result.grid_import_kwh = result.tbp;
    } else if (result.quote.sdr.has_value() && *result.quote.sdr <= 1.0) {
        // Supply is the short side: offers clear fully internal, bids fill
        // pro-rata internally and import the rest, paying the blended IBP on
        // the full quantity.
        const double sdr = *result.quote.sdr;
        result.quote.isp = internal_selling_price(sdr, lambda_sell, lambda_buy);
        result.quote.ibp = internal_buying_price(result.quote.isp, sdr, lambda_buy);
        for (const Order& order : book.offers) {
            FarmSettlement& r = row(order.farm_id);
            r.sold_internal_kwh = order.quantity_kwh;
            r.revenue = order.quantity_kwh * result.quote.isp;
        }
        for (const Order& order : book.bids) {
            FarmSettlement& r = row(order.farm_id);
            r.bought_internal_kwh = order.quantity_kwh * sdr;
            r.bought_grid_kwh = order.quantity_kwh * (1.0 - sdr);
            r.cost = order.quantity_kwh * result.quote.ibp;
        }
        result.grid_import_kwh = result.tbp - result.tsp;
    } else {
        // Demand is the short side (or absent): bids clear fully internal,
        // offers split 1/SDR internal with the rest exported, all at
        // lambda_sell; buyers pay the full grid price.
        result.quote.isp = lambda_sell;
        result.quote.ibp = lambda_buy;
        const double internal_fraction = result.tsp > 0.0 ? result.tbp / result.tsp : 0.0;
        for (const Order& order : book.offers) {
            FarmSettlement& r = row(order.farm_id);
            r.sold_internal_kwh = order.quantity_kwh * internal_fraction;
            r.sold_grid_kwh = order.quantity_kwh - r.sold_internal_kwh;
            r.revenue = order.quantity_kwh * lambda_sell;
        }
        for (const Order& order : book.bids) {
            FarmSettlement& r = row(order.farm_id);
            r.bought_internal_kwh = order.quantity_kwh;
            r.cost = order.quantity_kwh * lambda_buy;
        }
        result.grid_export_kwh = result.tsp - result.tbp;
    }

    // Auctioneer cash position: what buyers paid, minus internal seller
    // receipts, minus what the grid was paid for imports. Exports are settled
    // directly between seller and grid.
    double buyer_payments = 0.0;
    double internal_receipts = 0.0;
    double grid_import_cost = 0.0;
    result.settlements.reserve(rows.size());
    for (auto& [farm_id, settlement] : rows) {
        settlement.cash_delta = settlement.revenue - settlement.cost;
        buyer_payments += settlement.cost;
        internal_receipts += settlement.sold_internal_kwh * result.quote.isp;
        grid_import_cost += settlement.bought_grid_kwh * lambda_buy;
        result.settlements.push_back(settlement);
    }
    result.auctioneer_imbalance = buyer_payments - internal_receipts - grid_import_cost;
    return result;
}

} // namespace farmtrade
