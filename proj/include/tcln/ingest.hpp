#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "error.hpp"
#include "model.hpp"
#include "trajectory.hpp"

namespace tcln
{
	/// One observation: a paper's cumulative citation count as of a year.
	struct CitationRecord
	{
		std::string paper_id;
		int year = 0;
		CitationCount cumulative_citations = 0;

		friend bool operator==(const CitationRecord&, const CitationRecord&) = default;
	};

	enum class RecordFormat
	{
		/// `paper_id,year,cumulative_citations`, one row per observation.
		long_csv,
		/// `year,citations`, one row per year with a space separated count vector,
		/// optionally bracketed (`1970,[6 3]`). Paper identity is inferred.
		yearly_vectors,
	};

	inline constexpr std::string_view long_csv_header = "paper_id,year,cumulative_citations";
	inline constexpr std::string_view yearly_vectors_header = "year,citations";

	enum class ParseErrorKind
	{
		unreadable,
		bad_header,
		bad_row,
		bad_year,
		bad_citations,
		negative_citations,
		duplicate_observation,
		decreasing_citations,
	};

	[[nodiscard]] inline auto to_string(ParseErrorKind k) -> std::string_view
	{
		switch (k)
		{
		case ParseErrorKind::unreadable: return "unreadable";
		case ParseErrorKind::bad_header: return "bad-header";
		case ParseErrorKind::bad_row: return "bad-row";
		case ParseErrorKind::bad_year: return "bad-year";
		case ParseErrorKind::bad_citations: return "bad-citations";
		case ParseErrorKind::negative_citations: return "negative-citations";
		case ParseErrorKind::duplicate_observation: return "duplicate-observation";
		case ParseErrorKind::decreasing_citations: return "decreasing-citations";
		}
		return "unknown";
	}

	class ParseError : public FormatError
	{
	public:
		ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
		    : FormatError(line ? fmt::format("line {}: {}: {}", line, to_string(kind), what)
		                       : fmt::format("{}: {}", to_string(kind), what)),
		      kind_(kind), line_(line)
		{
		}

		[[nodiscard]] auto kind() const -> ParseErrorKind { return kind_; }
		/// 1-based line number, 0 when the error is not tied to a line.
		[[nodiscard]] auto line() const -> std::size_t { return line_; }

	private:
		ParseErrorKind kind_;
		std::size_t line_;
	};

	struct LoadReport
	{
		std::vector<CitationRecord> records; ///< file order
		/// Rows whose year field was empty; such papers are not indexed by year.
		std::size_t skipped_missing_year = 0;
	};

	namespace detail
	{
		inline auto trim(std::string_view s) -> std::string_view
		{
			const auto ws = " \t";
			const auto b = s.find_first_not_of(ws);
			if (b == std::string_view::npos)
				return {};
			return s.substr(b, s.find_last_not_of(ws) - b + 1);
		}

		inline auto split(std::string_view s, char sep) -> std::vector<std::string_view>
		{
			std::vector<std::string_view> out;
			std::size_t start = 0;
			for (;;)
			{
				auto pos = s.find(sep, start);
				out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
				if (pos == std::string_view::npos)
					break;
				start = pos + 1;
			}
			return out;
		}

		template <class Int>
		inline bool parse_int(std::string_view s, Int& out)
		{
			if (s.empty())
				return false;
			if (s.front() == '+')
				s.remove_prefix(1);
			auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
			return ec == std::errc{} && ptr == s.data() + s.size();
		}

		/// Reads one line, dropping a trailing CR. Returns false at end of stream.
		inline bool next_line(std::istream& in, std::string& line)
		{
			if (!std::getline(in, line))
				return false;
			if (!line.empty() && line.back() == '\r')
				line.pop_back();
			return true;
		}

		inline void expect_header(std::istream& in, std::string_view header, std::size_t& line_no)
		{
			if (!in.good())
				throw ParseError(ParseErrorKind::unreadable, 0, "input stream is not readable");
			std::string line;
			if (!next_line(in, line))
			{
				if (in.bad())
					throw ParseError(ParseErrorKind::unreadable, 0, "read failure");
				throw ParseError(ParseErrorKind::bad_header, 1, fmt::format("missing header, expected '{}'", header));
			}
			line_no = 1;
			std::string_view view = line;
			if (view.starts_with("\xEF\xBB\xBF"))
				view.remove_prefix(3);
			if (view != header)
				throw ParseError(ParseErrorKind::bad_header, 1,
				                 fmt::format("expected '{}', found '{}'", header, view));
		}

		inline auto parse_citations(std::string_view field, std::size_t line_no) -> CitationCount
		{
			field = trim(field);
			std::int64_t value = 0;
			if (!parse_int(field, value))
			{
				CitationCount big = 0;
				if (parse_int(field, big))
					return big;
				throw ParseError(ParseErrorKind::bad_citations, line_no,
				                 fmt::format("citation count '{}' is not an integer", field));
			}
			if (value < 0)
				throw ParseError(ParseErrorKind::negative_citations, line_no,
				                 fmt::format("citation count {} is negative", value));
			return static_cast<CitationCount>(value);
		}

		inline auto parse_year(std::string_view field, std::size_t line_no) -> int
		{
			int year = 0;
			if (!parse_int(field, year))
				throw ParseError(ParseErrorKind::bad_year, line_no, fmt::format("year '{}' is not an integer", field));
			return year;
		}

		/// Rejects repeated (paper, year) pairs and counts that shrink over time.
		inline void check_cumulative(const std::vector<CitationRecord>& records, const std::vector<std::size_t>& lines)
		{
			std::map<std::string, std::map<int, std::size_t>> by_paper;
			for (std::size_t i = 0; i < records.size(); ++i)
			{
				auto [it, fresh] = by_paper[records[i].paper_id].try_emplace(records[i].year, i);
				if (!fresh)
					throw ParseError(ParseErrorKind::duplicate_observation, lines[i],
					                 fmt::format("paper '{}' already observed in {} (line {})", records[i].paper_id,
					                             records[i].year, lines[it->second]));
			}
			for (const auto& [paper, years] : by_paper)
			{
				const CitationRecord* prev = nullptr;
				for (const auto& [year, idx] : years)
				{
					const auto& rec = records[idx];
					if (prev && rec.cumulative_citations < prev->cumulative_citations)
						throw ParseError(ParseErrorKind::decreasing_citations, lines[idx],
						                 fmt::format("paper '{}' falls from {} citations in {} to {} in {}", paper,
						                             prev->cumulative_citations, prev->year,
						                             rec.cumulative_citations, year));
					prev = &rec;
				}
			}
		}

		inline auto load_long_csv(std::istream& in) -> LoadReport
		{
			std::size_t line_no = 0;
			expect_header(in, long_csv_header, line_no);

			LoadReport report;
			std::vector<std::size_t> lines;
			std::string line;
			while (next_line(in, line))
			{
				++line_no;
				if (trim(line).empty())
					continue;
				auto fields = split(line, ',');
				if (fields.size() != 3)
					throw ParseError(ParseErrorKind::bad_row, line_no,
					                 fmt::format("expected 3 fields, found {}", fields.size()));
				auto id = trim(fields[0]);
				if (id.empty())
					throw ParseError(ParseErrorKind::bad_row, line_no, "empty paper_id");
				auto year_field = trim(fields[1]);
				if (year_field.empty())
				{
					++report.skipped_missing_year;
					continue;
				}
				CitationRecord rec{std::string(id), parse_year(year_field, line_no),
				                   parse_citations(fields[2], line_no)};
				report.records.push_back(std::move(rec));
				lines.push_back(line_no);
			}
			if (in.bad())
				throw ParseError(ParseErrorKind::unreadable, line_no, "read failure");

			check_cumulative(report.records, lines);
			return report;
		}

		inline auto load_yearly_vectors(std::istream& in) -> LoadReport
		{
			std::size_t line_no = 0;
			expect_header(in, yearly_vectors_header, line_no);

			struct Row
			{
				int year;
				CitationVector counts;
				std::size_t line;
			};
			std::vector<Row> rows;
			std::string line;
			while (next_line(in, line))
			{
				++line_no;
				if (trim(line).empty())
					continue;
				auto fields = split(line, ',');
				if (fields.size() != 2)
					throw ParseError(ParseErrorKind::bad_row, line_no,
					                 fmt::format("expected 2 fields, found {}", fields.size()));
				Row row{parse_year(trim(fields[0]), line_no), {}, line_no};
				auto vec = trim(fields[1]);
				if (vec.starts_with('[') != vec.ends_with(']') || (vec.size() == 1 && vec.front() == '['))
					throw ParseError(ParseErrorKind::bad_row, line_no, "unbalanced brackets");
				if (vec.starts_with('['))
					vec = trim(vec.substr(1, vec.size() - 2));
				for (auto tok : split(vec, ' '))
					if (!tok.empty())
						row.counts.push_back(parse_citations(tok, line_no));
				rows.push_back(std::move(row));
			}
			if (in.bad())
				throw ParseError(ParseErrorKind::unreadable, line_no, "read failure");

			std::ranges::stable_sort(rows, {}, &Row::year);
			for (std::size_t i = 1; i < rows.size(); ++i)
				if (rows[i].year == rows[i - 1].year)
					throw ParseError(ParseErrorKind::duplicate_observation, rows[i].line,
					                 fmt::format("year {} appears twice", rows[i].year));

			// Match last year's papers to this year's counts rank by rank (both sorted
			// descending). If any order-preserving assignment exists, this one does.
			LoadReport report;
			std::vector<std::pair<std::string, CitationCount>> papers;
			std::size_t next_id = 0;
			for (auto& row : rows)
			{
				std::ranges::sort(row.counts, std::greater<>{});
				std::ranges::stable_sort(papers, std::greater<>{}, &std::pair<std::string, CitationCount>::second);
				if (row.counts.size() < papers.size())
					throw ParseError(ParseErrorKind::decreasing_citations, row.line,
					                 fmt::format("year {} lists {} papers, fewer than the {} already seen", row.year,
					                             row.counts.size(), papers.size()));
				for (std::size_t i = 0; i < row.counts.size(); ++i)
				{
					if (i < papers.size())
					{
						if (row.counts[i] < papers[i].second)
							throw ParseError(ParseErrorKind::decreasing_citations, row.line,
							                 fmt::format("year {} cannot be matched to earlier counts without a "
							                             "paper losing citations",
							                             row.year));
						papers[i].second = row.counts[i];
					}
					else
						papers.emplace_back(fmt::format("p{}", ++next_id), row.counts[i]);
				}
				for (const auto& [id, c] : papers)
					report.records.push_back({id, row.year, c});
			}
			return report;
		}
	}

	/// Parses citation records. Throws ParseError naming the offending line.
	[[nodiscard]] inline auto load_records(std::istream& in, RecordFormat format = RecordFormat::long_csv)
	    -> LoadReport
	{
		switch (format)
		{
		case RecordFormat::long_csv: return detail::load_long_csv(in);
		case RecordFormat::yearly_vectors: return detail::load_yearly_vectors(in);
		}
		throw Error("unknown record format");
	}

	/// Writes records as long-format CSV, the inverse of load_records(long_csv).
	inline void serialize_records(std::ostream& out, const std::vector<CitationRecord>& records)
	{
		out << long_csv_header << '\n';
		for (const auto& r : records)
			out << fmt::format("{},{},{}\n", r.paper_id, r.year, r.cumulative_citations);
	}

	/// Builds the year-by-year citation vectors of one researcher from observations.
	///
	/// A paper joins at its first observed year and afterwards carries its latest
	/// count at or before each year. Throws DataError when no observation falls in
	/// [from_year, to_year].
	[[nodiscard]] inline auto compute_trajectory(const std::vector<CitationRecord>& records, int from_year, int to_year)
	    -> Trajectory
	{
		if (from_year > to_year)
			throw DataError(fmt::format("empty year range {}..{}", from_year, to_year));
		if (std::ranges::none_of(records,
		                         [&](const auto& r) { return r.year >= from_year && r.year <= to_year; }))
			throw DataError(fmt::format("no data in range {}..{}", from_year, to_year));

		std::map<std::string, std::map<int, CitationCount>> series;
		for (const auto& r : records)
		{
			auto [it, fresh] = series[r.paper_id].try_emplace(r.year, r.cumulative_citations);
			if (!fresh && it->second != r.cumulative_citations)
				throw DataError(fmt::format("paper '{}' has conflicting counts for {}", r.paper_id, r.year));
		}

		Trajectory t;
		for (int year = from_year; year <= to_year; ++year)
		{
			std::vector<std::pair<CitationCount, std::string>> rows;
			for (const auto& [paper, obs] : series)
			{
				auto it = obs.upper_bound(year);
				if (it == obs.begin())
					continue;
				rows.emplace_back(std::prev(it)->second, paper);
			}
			std::ranges::sort(rows, [](const auto& a, const auto& b) {
				return a.first != b.first ? a.first > b.first : a.second < b.second;
			});

			TrajectoryPoint pt;
			pt.year = year;
			for (auto& [c, id] : rows)
			{
				pt.citations.push_back(c);
				pt.paper_ids.emplace_back(std::move(id));
			}
			pt.h = compute_h_index(pt.citations);
			t.push_back(std::move(pt));
		}
		return t;
	}

	struct YearSnapshot
	{
		int year = 0;
		Tcln graph;
	};

	inline const ResearcherId replay_researcher_id{"r1"};

	/// One single-researcher graph per trajectory year.
	///
	/// Papers keep their record ids when the trajectory has them (prefixed with the
	/// researcher id to stay disjoint from it), otherwise they are named by rank. A
	/// paper's publication year is the first year it appears.
	[[nodiscard]] inline auto replay_into_tcln(const Trajectory& t, const std::string& researcher_label,
	                                           WorldBounds bounds = {}) -> std::vector<YearSnapshot>
	{
		if (auto bad = trajectory_violation(t))
			throw DataError("invalid trajectory: " + *bad);

		auto name = [&](const TrajectoryPoint& pt, std::size_t rank) {
			return pt.paper_ids.empty() ? fmt::format("{}-p{}", replay_researcher_id.value, rank + 1)
			                            : fmt::format("{}-{}", replay_researcher_id.value, pt.paper_ids[rank].value);
		};

		std::map<std::string, int> first_seen;
		for (const auto& pt : t)
			for (std::size_t i = 0; i < pt.citations.size(); ++i)
				first_seen.try_emplace(name(pt, i), pt.year);

		std::vector<YearSnapshot> out;
		out.reserve(t.size());
		for (const auto& pt : t)
		{
			Tcln g{bounds};
			ResearcherNode r;
			r.id = replay_researcher_id;
			r.label = researcher_label;
			g.add_researcher(std::move(r));

			std::vector<PaperNode> papers;
			for (std::size_t i = 0; i < pt.citations.size(); ++i)
			{
				PaperNode p;
				p.id = PaperId{name(pt, i)};
				p.owner = replay_researcher_id;
				p.pub_year = first_seen.at(p.id.value);
				p.citations = pt.citations[i];
				p.tend_to_be_cited = min_tendency;
				papers.push_back(std::move(p));
			}
			std::ranges::stable_sort(papers, [](const auto& a, const auto& b) {
				return a.pub_year != b.pub_year ? a.pub_year < b.pub_year : a.id < b.id;
			});
			for (auto& p : papers)
				g.publish_paper(replay_researcher_id, std::move(p));

			out.push_back({pt.year, std::move(g)});
		}
		return out;
	}
}
