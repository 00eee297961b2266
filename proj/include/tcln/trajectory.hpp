#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ids.hpp"
#include "indices.hpp"

namespace tcln
{
	/// One year of a researcher's record.
	struct TrajectoryPoint
	{
		int year = 0;
		CitationVector citations; ///< sorted descending
		std::uint64_t h = 0;
		/// Paper ids parallel to `citations`, when the source knows paper identity.
		std::vector<PaperId> paper_ids;

		friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
	};

	using Trajectory = std::vector<TrajectoryPoint>;

	struct ResearcherTrajectory
	{
		ResearcherId researcher;
		Trajectory points;

		friend bool operator==(const ResearcherTrajectory&, const ResearcherTrajectory&) = default;
	};

	/// First broken invariant of a trajectory, or nullopt when it is well formed.
	[[nodiscard]] inline auto trajectory_violation(const Trajectory& t) -> std::optional<std::string>
	{
		for (std::size_t i = 0; i < t.size(); ++i)
		{
			const auto& pt = t[i];
			if (auto h = compute_h_index(pt.citations); h != pt.h)
				return fmt::format("year {}: h = {} but citations give {}", pt.year, pt.h, h);
			if (!pt.paper_ids.empty() && pt.paper_ids.size() != pt.citations.size())
				return fmt::format("year {}: {} paper ids for {} citation entries", pt.year, pt.paper_ids.size(),
				                   pt.citations.size());
			if (i == 0)
				continue;
			const auto& prev = t[i - 1];
			if (pt.year <= prev.year)
				return fmt::format("year {} does not follow {}", pt.year, prev.year);
			if (pt.citations.size() < prev.citations.size())
				return fmt::format("year {}: paper count fell from {} to {}", pt.year, prev.citations.size(),
				                   pt.citations.size());
			if (pt.h < prev.h)
				return fmt::format("year {}: h fell from {} to {}", pt.year, prev.h, pt.h);
		}
		return std::nullopt;
	}
}
