#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fgt/boxdim.hpp"
#include "fgt/chain.hpp"
#include "fgt/flatnorm.hpp"
#include "fgt/forms.hpp"
#include "json.hpp"

namespace fgt {

using njson = nlohmann::json;

inline njson chain_to_json(const Chain& c) {
  njson j;
  j["dimension"] = c.dim();
  std::map<std::pair<double, double>, int> index;
  std::vector<Point2> verts;
  njson simplices = njson::array();
  for (size_t i = 0; i < c.size(); ++i) {
    const Simplex& s = c.simplex(i);
    njson ids = njson::array();
    for (int k = 0; k <= c.dim(); ++k) {
      const auto key = std::make_pair(s[k].x, s[k].y);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<int>(verts.size())).first;
        verts.push_back(s[k]);
      }
      ids.push_back(it->second);
    }
    simplices.push_back({{"coeff", c.coeff(i)}, {"verts", ids}});
  }
  njson vj = njson::array();
  for (const auto& p : verts) vj.push_back({p.x, p.y});
  j["vertices"] = vj;
  j["simplices"] = simplices;
  return j;
}

inline Chain chain_from_json(const njson& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("vertices") ||
      !j.contains("simplices"))
    throw std::invalid_argument(
        "chain json needs dimension, vertices, simplices");
  const int dim = j.at("dimension").get<int>();
  if (dim < 0 || dim > 2) throw std::invalid_argument("chain dimension");
  std::vector<Point2> verts;
  for (const auto& v : j.at("vertices")) {
    if (!v.is_array() || v.size() != 2)
      throw std::invalid_argument("vertex must be [x, y]");
    verts.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  std::vector<std::pair<double, Simplex>> terms;
  for (const auto& s : j.at("simplices")) {
    const double coeff = s.at("coeff").get<double>();
    const auto& ids = s.at("verts");
    if (!ids.is_array() || ids.size() != static_cast<size_t>(dim) + 1)
      throw std::invalid_argument("simplex vertex count does not match dimension");
    std::array<int, 3> id = {0, 0, 0};
    for (size_t k = 0; k < ids.size(); ++k) {
      id[k] = ids[k].get<int>();
      if (id[k] < 0 || id[k] >= static_cast<int>(verts.size()))
        throw std::invalid_argument("simplex vertex id out of range");
    }
    switch (dim) {
      case 0:
        terms.push_back({coeff, Simplex::point(verts[id[0]])});
        break;
      case 1:
        terms.push_back({coeff, Simplex::segment(verts[id[0]], verts[id[1]])});
        break;
      default:
        terms.push_back({coeff, Simplex::triangle(verts[id[0]], verts[id[1]],
                                                  verts[id[2]])});
    }
  }
  return Chain::from_terms(dim, std::move(terms));
}

inline njson flatnorm_to_json(const FlatNormResult& r) {
  njson j;
  j["value"] = r.value;
  j["filling"] = chain_to_json(r.filling);
  j["residual"] = chain_to_json(r.residual);
  return j;
}

inline njson dimension_to_json(const DimensionFit& f) {
  njson j;
  j["estimate"] = f.estimate;
  j["intercept"] = f.intercept;
  j["rms_residual"] = f.rms_residual;
  njson table = njson::array();
  for (const auto& row : f.table)
    table.push_back({{"scale", row.scale}, {"count", row.count}});
  j["table"] = table;
  return j;
}

inline njson polyline_to_json(const std::vector<Point2>& pts, bool closed) {
  njson j;
  j["closed"] = closed;
  njson arr = njson::array();
  for (const auto& p : pts) arr.push_back({p.x, p.y});
  j["points"] = arr;
  return j;
}

/// Polynomial form field: {"degree": d, "components": {"12": [[c,et,e1,e2],..]}}.
/// Component keys are the basis subsets by name; missing keys mean zero.
inline FormField form_from_json(const njson& j) {
  if (!j.is_object() || !j.contains("degree"))
    throw std::invalid_argument("form json needs a degree");
  const int degree = j.at("degree").get<int>();
  FormField f(degree);
  if (!j.contains("components")) return f;
  for (const auto& [key, val] : j.at("components").items()) {
    int mask = -1;
    for (int m : FormField::masks(degree))
      if (FormField::mask_name(m) == key) mask = m;
    if (mask < 0)
      throw std::invalid_argument("component '" + key +
                                  "' does not belong to degree " +
                                  std::to_string(degree));
    std::vector<Poly3::Term> terms;
    for (const auto& t : val) {
      if (!t.is_array() || t.size() != 4)
        throw std::invalid_argument("poly term must be [c, et, e1, e2]");
      terms.push_back({t[0].get<double>(), t[1].get<int>(), t[2].get<int>(),
                       t[3].get<int>()});
    }
    f.comp_by_mask(mask) = FormComponent(Poly3(std::move(terms)));
  }
  return f;
}

inline njson form_to_json(const FormField& f) {
  if (!f.all_poly())
    throw std::invalid_argument("only polynomial fields serialize to json");
  njson comps = njson::object();
  for (int i = 0; i < f.ncomp(); ++i) {
    const int mask = FormField::masks(f.degree())[i];
    if (f.comp(i).poly.is_zero()) continue;
    njson terms = njson::array();
    for (const auto& t : f.comp(i).poly.terms())
      terms.push_back({t.c, t.et, t.e1, t.e2});
    comps[FormField::mask_name(mask)] = terms;
  }
  njson j;
  j["degree"] = f.degree();
  j["components"] = comps;
  return j;
}

}  // namespace fgt
