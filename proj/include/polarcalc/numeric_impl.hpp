#pragma once

#include <future>
#include <thread>

namespace polarcalc::numeric {

template <class T>
std::vector<T> run_shards(std::uint64_t seed, std::uint64_t samples,
                          const std::function<T(Rng&, std::uint64_t, int)>& work) {
  std::vector<std::uint64_t> counts(kShards, samples / kShards);
  for (std::uint64_t i = 0; i < samples % kShards; ++i) ++counts[i];

  auto shard = [&](int s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    return work(rng, counts[static_cast<std::size_t>(s)], s);
  };

  std::vector<T> out;
  out.reserve(kShards);
  if (std::thread::hardware_concurrency() > 1) {
    std::vector<std::future<T>> jobs;
    for (int s = 0; s < kShards; ++s) jobs.push_back(std::async(std::launch::async, shard, s));
    for (auto& j : jobs) out.push_back(j.get());
  } else {
    for (int s = 0; s < kShards; ++s) out.push_back(shard(s));
  }
  return out;
}

}  // namespace polarcalc::numeric
