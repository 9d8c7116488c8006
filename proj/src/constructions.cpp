#include "mindeg/constructions.hpp"

#include <initializer_list>
#include <stdexcept>
#include <utility>

#include "mindeg/actions.hpp"
#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

PermGroup from_cycles(int degree, std::initializer_list<const char*> gens) {
  std::vector<Perm> ps;
  for (const char* g : gens) ps.push_back(Perm::parse_cycles(g, degree));
  return PermGroup::from_generators(degree, std::move(ps));
}

PermGroup checked(PermGroup g, std::uint64_t order, const std::string& key) {
  if (g.order() != order)
    throw std::logic_error("named group has wrong order: " + key);
  return g;
}

std::vector<int> orbit_sizes(const PermGroup& g) {
  std::vector<int> out;
  for (const auto& o : orbits(g)) out.push_back(static_cast<int>(o.size()));
  return out;
}

PermGroup make_h7() {
  PermGroup g = from_cycles(7, {"(1 2 3)", "(1 2)(4 5 6 7)"});
  if (orbit_sizes(g) != std::vector<int>{3, 4})
    throw std::logic_error("H7 orbits are off");
  return checked(std::move(g), 12, "H7");
}

PermGroup make_k8() {
  PermGroup g = from_cycles(8, {"(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                                "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)"});
  if (!is_transitive(g)) throw std::logic_error("K8 is not transitive");
  return checked(std::move(g), 56, "K8");
}

PermGroup make_l8() {
  PermGroup g = from_cycles(8, {"(1 2)(3 4)(5 6)(7 8)", "(1 3)(2 4)(5 7)(6 8)",
                                "(1 5)(2 6)(3 7)(4 8)", "(2 3 5 4 7 8 6)",
                                "(3 5 7)(4 6 8)"});
  if (!g.contains_group(make_k8())) throw std::logic_error("L8 lost K8");
  return checked(std::move(g), 168, "L8");
}

PermGroup make_g225() {
  PermGroup g = from_cycles(10, {"(1 2 3 4 5)(6 7 8 9 10)", "(1 6)(2 7)"});
  if (!is_transitive(g)) throw std::logic_error("G225 is not transitive");
  return checked(std::move(g), 80, "G225");
}

PermGroup make_g225xc2() {
  const Perm z = Perm::parse_cycles("(1 6)(2 7)(3 8)(4 9)(5 10)", 10);
  PermGroup g225 = make_g225();
  std::vector<Perm> gens = g225.generators();
  for (const Perm& x : gens) {
    if (compose(x, z) != compose(z, x))
      throw std::logic_error("G225xC2 adjoined element does not centralize");
  }
  gens.push_back(z);
  return checked(PermGroup::from_generators(10, std::move(gens)), 160,
                 "G225xC2");
}

}  // namespace

PermGroup named_group(const std::string& key) {
  if (key == "H7") return make_h7();
  if (key == "K8") return make_k8();
  if (key == "L8") return make_l8();
  if (key == "H7xC2_9")
    return checked(from_cycles(9, {"(1 2 3)", "(1 3)(4 5 6 7)", "(8 9)"}), 24,
                   "H7xC2_9");
  if (key == "C3wrS3") {
    PermGroup g = wreath_product(PermGroup::cyclic(3), PermGroup::symmetric(3));
    return checked(std::move(g), 162, "C3wrS3");
  }
  if (key == "G225") return make_g225();
  if (key == "G225xC2") return make_g225xc2();
  throw input_error("unknown named group '" + key + "'");
}

std::vector<std::string> named_group_keys() {
  return {"H7", "K8", "L8", "H7xC2_9", "C3wrS3", "G225", "G225xC2"};
}

}  // namespace mindeg
