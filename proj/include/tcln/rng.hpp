#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace tcln
{
	/// Deterministic random source with a fixed bit stream on every platform.
	///
	/// The engine is std::mt19937_64, whose output sequence is pinned by the standard.
	/// The standard distributions are not, so integer, unit-interval and Poisson draws
	/// are derived here from raw 64-bit words.
	class Rng
	{
	public:
		explicit Rng(std::uint64_t seed) : engine_(seed) {}

		auto next_u64() -> std::uint64_t { return engine_(); }

		/// Uniform on {0, ..., n - 1}, the semantics of NetLogo's `random n`. n = 0 yields 0.
		auto below(std::uint64_t n) -> std::uint64_t
		{
			if (n <= 1)
				return 0;
			// Reject the top partial bucket so every residue is equally likely.
			const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n + 1) % n;
			std::uint64_t x = 0;
			do
				x = engine_();
			while (x > limit);
			return x % n;
		}

		/// Uniform on [0, 1) with 53 random bits.
		auto unit() -> double { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

		/// Poisson(mean) by Knuth's product method, applied in chunks of at most
		/// `chunk` so exp(-mean) never underflows. Sums of Poissons are Poisson.
		auto poisson(double mean) -> std::uint64_t
		{
			constexpr double chunk = 16.0;
			if (!(mean > 0.0))
				return 0;
			std::uint64_t total = 0;
			while (mean > 0.0)
			{
				const double part = mean > chunk ? chunk : mean;
				mean -= part;
				const double floor = std::exp(-part);
				double prod = 1.0;
				std::uint64_t k = 0;
				for (;;)
				{
					prod *= unit();
					if (prod <= floor)
						break;
					++k;
				}
				total += k;
			}
			return total;
		}

		friend bool operator==(const Rng&, const Rng&) = default;

	private:
		std::mt19937_64 engine_;
	};
}
