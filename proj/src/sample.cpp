#include "diagcx/sample.hpp"

namespace diagcx::sample {

std::shared_ptr<const Presentation> abcd() {
  static const auto p = Presentation::parse("abcd ; ab=cd, cb=bc, ab=ba");
  return p;
}

Picture random_picture(std::mt19937_64& rng, std::shared_ptr<const Presentation> pres,
                       const Word& top, Variant v, int steps) {
  Picture p = make_identity(pres, top, v);
  for (int s = 0; s < steps; ++s) {
    if (rng() % 4 == 0 && p.bottom_size() > 0) {
      // a cancelling pair on a random run of frame-bottom wires
      int rel = static_cast<int>(rng() % pres->relations().size());
      Dir dir = rng() % 2 ? Dir::kForward : Dir::kReverse;
      const auto& r = pres->relations()[rel];
      const Word& w = dir == Dir::kForward ? r.lhs : r.rhs;
      Word bottom = p.bottom();
      std::vector<int> starts;
      for (std::size_t i = 0; i + w.size() <= bottom.size(); ++i)
        if (bottom.compare(i, w.size(), w) == 0) starts.push_back(static_cast<int>(i));
      if (starts.empty()) continue;
      int st = starts[rng() % starts.size()];
      std::vector<End> sinks;
      for (std::size_t j = 0; j < w.size(); ++j)
        sinks.push_back({End::kFrame, st + static_cast<int>(j)});
      p = insert_dipole(p, sinks, rel, dir);
      continue;
    }
    auto as = attachments(p);
    if (as.empty()) break;
    const auto& a = as[rng() % as.size()];
    if (p.bottom_size() + 2 > 12 && a.dir == Dir::kForward && pres->is_thompson())
      continue;  // keep widths modest
    p = attach(p, a);
  }
  return p;
}

Picture random_tree(std::mt19937_64& rng, int carets, Variant v) {
  Picture p = make_identity(Presentation::thompson(), "x", v);
  for (int i = 0; i < carets; ++i) {
    int port = static_cast<int>(rng() % p.bottom_size());
    p = attach(p, {0, Dir::kForward, {port}});
  }
  return p;
}

Word random_word(std::mt19937_64& rng, const std::string& alphabet, int len) {
  Word w;
  for (int i = 0; i < len; ++i) w += alphabet[rng() % alphabet.size()];
  return w;
}

Picture reduce_randomly(Picture p, std::mt19937_64& rng) {
  for (;;) {
    auto ds = find_dipoles(p);
    if (ds.empty()) return p;
    p = remove_dipole(p, ds[rng() % ds.size()]);
  }
}

}  // namespace diagcx::sample
