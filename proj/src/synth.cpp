#include "vcsc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "vcsc/error.hpp"
#include "vcsc/random.hpp"

namespace vcsc {

namespace {

std::string make_id(const char* prefix, std::size_t index, std::size_t count) {
  const int width = std::max<int>(4, static_cast<int>(std::to_string(count).size()));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, index + 1);
  return buf;
}

// Dividing by the reciprocal gives the nearest double to the decimal value.
double round_to(double v, double unit) { return std::round(v / unit) / (1.0 / unit); }

Date add_months(Date d, int months) {
  const int total = d.year * 12 + (d.month - 1) + months;
  d.year = total / 12;
  d.month = total % 12 + 1;
  return d;
}

}  // namespace

SyntheticEvents generate_synthetic_eventlog(const SynthConfig& cfg) {
  if (cfg.firms == 0 || cfg.companies == 0 || cfg.rounds_per_company == 0)
    throw Error(ErrorCode::InvalidArgument, "firm, company and round counts must be positive");
  auto in_unit = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (!in_unit(cfg.syndication_rate) || !in_unit(cfg.exit_rate))
    throw Error(ErrorCode::InvalidArgument, "rates must lie in [0, 1]");

  std::mt19937_64 rng(derive_seed(cfg.seed, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw_int = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  std::vector<std::size_t> order(cfg.firms);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::deque<std::size_t> unused;
  for (std::size_t k = cfg.companies; k < cfg.firms; ++k) unused.push_back(order[k]);

  SyntheticEvents out;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<double, Date>> positions;  // principal, last date

  for (std::size_t c = 0; c < cfg.companies; ++c) {
    const std::size_t lead = order[c % cfg.firms];
    const int rounds = draw_int(1, static_cast<int>(cfg.rounds_per_company));
    Date date{draw_int(2000, 2012), draw_int(1, 12), draw_int(1, 28)};
    for (int r = 0; r < rounds; ++r) {
      if (r > 0) date = add_months(date, draw_int(6, 18));
      std::vector<std::size_t> investors{lead};
      if (cfg.firms > 1 && unit(rng) < cfg.syndication_rate) {
        int extra = 1;
        while (extra < 5 && unit(rng) < 0.4) ++extra;
        extra = std::min<int>(extra, static_cast<int>(cfg.firms) - 1);
        while (static_cast<int>(investors.size()) < extra + 1) {
          std::size_t f;
          if (!unused.empty()) {
            f = unused.front();
            unused.pop_front();
          } else {
            f = static_cast<std::size_t>(draw_int(0, static_cast<int>(cfg.firms) - 1));
          }
          if (std::find(investors.begin(), investors.end(), f) == investors.end()) investors.push_back(f);
        }
      }
      for (std::size_t f : investors) {
        const double amount = std::max(1000.0, round_to(std::exp(15.0 + normal(rng)), 1000.0));
        out.investments.push_back({make_id("VC", f, cfg.firms), make_id("C", c, cfg.companies),
                                   "R" + std::to_string(r + 1), date, amount});
        auto& pos = positions[{f, c}];
        pos.first += amount;
        pos.second = std::max(pos.second, date);
      }
    }
  }

  for (const auto& [key, pos] : positions) {
    if (unit(rng) >= cfg.exit_rate) continue;
    const double u = unit(rng);
    const ExitType type = u < 0.4 ? ExitType::Ipo : u < 0.7 ? ExitType::MA : u < 0.85 ? ExitType::Buyback : ExitType::Other;
    const int years = draw_int(1, 8);
    const double book_return = round_to(std::exp(0.3 + 0.6 * normal(rng)), 1e-4);
    const double irr = round_to(std::pow(book_return, 1.0 / years) - 1.0, 1e-4);
    const double exit_amount = std::round(pos.first * book_return);
    Date exit_date = add_months(pos.second, 12 * years);
    if (exit_date.year > 2015) exit_date = {2015, draw_int(1, 12), draw_int(1, 28)};
    exit_date = std::max(exit_date, pos.second);
    out.exits.push_back({make_id("VC", key.first, cfg.firms), make_id("C", key.second, cfg.companies), type,
                         exit_amount, book_return, irr, exit_date});
  }
  return out;
}

void write_synthetic(const SyntheticEvents& events, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  for (const auto& [name, is_inv] : {std::pair{"investments.csv", true}, std::pair{"exits.csv", false}}) {
    const auto path = dir / name;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write '" + path.string() + "'");
    if (is_inv)
      write_investments(out, events.investments);
    else
      write_exits(out, events.exits);
    if (!out) throw Error(ErrorCode::Io, "write failed for '" + path.string() + "'");
  }
}

}  // namespace vcsc
