#pragma once

#include <functional>
#include <vector>

namespace padl {

// Finite abelian group split into a direct product of cyclic factors.  The
// element set is 0..n-1 with a caller supplied multiplication; gen[i] has
// order ord[i], the factors are independent, and coords is the resulting
// bijection onto the product of the Z/ord[i].
struct AbGroup {
  long n = 1;
  long id = 0;
  std::function<long(long, long)> mul;
  std::vector<long> gen;
  std::vector<long> ord;
  std::vector<std::vector<long>> coords;
};

// decomposes; throws when mul is not an abelian group law on 0..n-1
AbGroup abgroup_analyze(long n, long id, std::function<long(long, long)> mul);

long abgroup_pow(const AbGroup& g, long x, long e);
long abgroup_inv(const AbGroup& g, long x);
long abgroup_order_of(const AbGroup& g, long x);
long abgroup_from_coords(const AbGroup& g, const std::vector<long>& e);
long abgroup_exponent(const AbGroup& g);

}  // namespace padl
