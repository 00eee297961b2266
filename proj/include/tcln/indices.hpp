#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

namespace tcln
{
	using CitationCount = std::uint64_t;

	/// Per-paper cumulative citation counts of one researcher. Order carries no meaning.
	using CitationVector = std::vector<CitationCount>;

	/// Hirsch index: the largest k such that at least k papers have k or more citations.
	///
	/// Sorts a copy in descending order and scans for the first rank that exceeds its
	/// count. A single uncited paper yields 0 and an empty vector yields 0.
	[[nodiscard]] inline auto compute_h_index(std::span<const CitationCount> cites) -> std::uint64_t
	{
		CitationVector sorted(cites.begin(), cites.end());
		std::ranges::sort(sorted, std::greater<>{});

		std::uint64_t h = 0;
		for (const auto c : sorted)
		{
			if (c < h + 1)
				break;
			++h;
		}
		return h;
	}

	[[nodiscard]] inline auto total_citations(std::span<const CitationCount> cites) -> std::uint64_t
	{
		return std::accumulate(cites.begin(), cites.end(), std::uint64_t{0});
	}
}
