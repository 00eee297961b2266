#pragma once

#include <cmath>
#include <numbers>

#include "model.hpp"

namespace tcln
{
	/// Distance from a researcher to each of its papers.
	inline constexpr double paper_radius = 3.0;

	/// Turtle-style offset: heading 0 points up (+y), 90 points right (+x).
	[[nodiscard]] inline auto heading_offset(double degrees, double distance) -> Point
	{
		const double rad = degrees * std::numbers::pi / 180.0;
		return {distance * std::sin(rad), distance * std::cos(rad)};
	}

	/// Researchers occupy evenly spaced x slots in insertion order at y = h-index.
	/// Each researcher's papers sit on a circle of radius 3 around it at evenly spaced
	/// headings starting from 0 degrees, in publication order. Positions are clamped to
	/// the world bounds. The result depends only on structure and state, so applying
	/// it twice changes nothing.
	[[nodiscard]] inline auto layout(Tcln g) -> Tcln
	{
		const auto& b = g.bounds();
		const auto order = g.researcher_order();
		const double slot = (b.max_x - b.min_x) / static_cast<double>(order.empty() ? 1 : order.size());

		for (std::size_t i = 0; i < order.size(); ++i)
		{
			const auto& rid = order[i];
			const double x = std::clamp(b.min_x + (static_cast<double>(i) + 0.5) * slot, b.min_x, b.max_x);
			g.set_researcher_x(rid, x);

			const auto& r = g.researcher(rid);
			const Point hub = r.pos;
			const auto papers = r.papers;
			for (std::size_t k = 0; k < papers.size(); ++k)
			{
				const double heading = 360.0 * static_cast<double>(k) / static_cast<double>(papers.size());
				const auto off = heading_offset(heading, paper_radius);
				g.set_paper_pos(papers[k], b.clamp({hub.x + off.x, hub.y + off.y}));
			}
		}
		return g;
	}
}
