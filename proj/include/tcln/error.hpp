#pragma once

#include <stdexcept>
#include <string>

namespace tcln
{
	/// Base class for every error raised by the library.
	class Error : public std::runtime_error
	{
	public:
		using std::runtime_error::runtime_error;
	};

	/// A rejected graph transition. The graph is left unchanged.
	class ModelError : public Error
	{
	public:
		using Error::Error;
	};

	class ConfigError : public Error
	{
	public:
		using Error::Error;
	};

	/// Malformed serialized input (graph JSON, citation records).
	class FormatError : public Error
	{
	public:
		using Error::Error;
	};
}

namespace tcln
{
	/// Well-formed input that does not contain what the request needs.
	class DataError : public Error
	{
	public:
		using Error::Error;
	};
}
