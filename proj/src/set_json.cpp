#include "mrb/set_json.hpp"

#include <cmath>
#include <limits>

namespace mrb {

Json real_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  return v;
}

double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ValidationError("expected a real number, got " + j.dump());
}

std::vector<std::size_t> rle_encode(const std::vector<std::uint8_t>& mask) {
  std::vector<std::size_t> runs;
  std::uint8_t cur = 0;
  std::size_t len = 0;
  for (auto v : mask) {
    const std::uint8_t b = v ? 1 : 0;
    if (b == cur) {
      ++len;
    } else {
      runs.push_back(len);
      cur = b;
      len = 1;
    }
  }
  runs.push_back(len);
  return runs;
}

std::vector<std::uint8_t> rle_decode(const std::vector<std::size_t>& runs) {
  std::vector<std::uint8_t> mask;
  std::uint8_t cur = 0;
  for (auto n : runs) {
    mask.insert(mask.end(), n, cur);
    cur ^= 1;
  }
  return mask;
}

Json to_json(const Interval& iv) {
  return Json{{"kind", "interval"},
              {"lo", real_to_json(iv.lo())},
              {"hi", real_to_json(iv.hi())},
              {"lo_open", iv.lo_open()},
              {"hi_open", iv.hi_open()}};
}

Json to_json(const IdentifiedSet& s) {
  switch (s.kind()) {
    case SetKind::Interval: return to_json(s.as<Interval>());
    case SetKind::Box: {
      Json dims = Json::array();
      for (const auto& iv : s.as<Box>().dims()) dims.push_back(to_json(iv));
      return Json{{"kind", "box"}, {"dims", dims}};
    }
    case SetKind::Polytope: {
      const auto& p = s.as<HPolytope>();
      Json rows = Json::array();
      for (const auto& r : p.rows()) {
        Json c = Json::array();
        for (double v : r.coeffs) c.push_back(real_to_json(v));
        rows.push_back(Json{{"coeffs", c}, {"rhs", real_to_json(r.rhs)}, {"strict", r.strict}});
      }
      return Json{{"kind", "polytope"}, {"dim", p.dim()}, {"rows", rows}};
    }
    case SetKind::Grid: {
      const auto& g = s.as<GridSet>();
      Json axes = Json::array();
      for (const auto& ax : g.axes()) {
        Json a = Json::array();
        for (double v : ax) a.push_back(real_to_json(v));
        axes.push_back(a);
      }
      return Json{{"kind", "grid"}, {"axes", axes}, {"mask_rle", rle_encode(g.mask())}, {"count", g.count()}};
    }
    case SetKind::Union: {
      const auto& u = s.as<SetUnion>();
      Json parts = Json::array();
      for (const auto& p : u.parts) parts.push_back(to_json(p));
      return Json{{"kind", "union"}, {"dim", u.dim}, {"parts", parts}};
    }
  }
  return nullptr;
}

namespace {

Interval interval_from_json(const Json& j) {
  return Interval(real_from_json(j.at("lo")), real_from_json(j.at("hi")), j.value("lo_open", false),
                  j.value("hi_open", false));
}

}  // namespace

IdentifiedSet set_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ValidationError("set object needs a \"kind\" field");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "interval") return interval_from_json(j);
  if (kind == "box") {
    std::vector<Interval> dims;
    for (const auto& d : j.at("dims")) dims.push_back(interval_from_json(d));
    return Box(std::move(dims));
  }
  if (kind == "polytope") {
    const auto dim = j.at("dim").get<std::size_t>();
    HPolytope p(dim);
    for (const auto& r : j.at("rows")) {
      std::vector<double> c;
      for (const auto& v : r.at("coeffs")) c.push_back(real_from_json(v));
      p.add_row(std::move(c), real_from_json(r.at("rhs")), r.value("strict", false));
    }
    return p;
  }
  if (kind == "grid") {
    std::vector<std::vector<double>> axes;
    for (const auto& a : j.at("axes")) {
      std::vector<double> ax;
      for (const auto& v : a) ax.push_back(real_from_json(v));
      axes.push_back(std::move(ax));
    }
    return GridSet(std::move(axes), rle_decode(j.at("mask_rle").get<std::vector<std::size_t>>()));
  }
  if (kind == "union") {
    SetUnion u{j.at("dim").get<std::size_t>(), {}};
    for (const auto& p : j.at("parts")) u.parts.push_back(set_from_json(p));
    return u;
  }
  throw ValidationError("unknown set kind \"" + kind + "\"");
}

}  // namespace mrb
