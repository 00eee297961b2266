#pragma once

#include <compare>
#include <functional>
#include <ostream>
#include <string>
#include <utility>

namespace tcln
{
	/// Opaque string identifier, tagged so researcher and paper ids do not mix.
	template <class Tag>
	struct Id
	{
		std::string value;

		Id() = default;
		explicit Id(std::string v) : value(std::move(v)) {}

		[[nodiscard]] auto str() const -> const std::string& { return value; }

		friend auto operator<=>(const Id&, const Id&) = default;
		friend bool operator==(const Id&, const Id&) = default;

		friend auto operator<<(std::ostream& os, const Id& id) -> std::ostream& { return os << id.value; }
	};

	struct ResearcherTag;
	struct PaperTag;

	using ResearcherId = Id<ResearcherTag>;
	using PaperId = Id<PaperTag>;
}

template <class Tag>
struct std::hash<tcln::Id<Tag>>
{
	auto operator()(const tcln::Id<Tag>& id) const noexcept -> std::size_t
	{
		return std::hash<std::string>{}(id.value);
	}
};
