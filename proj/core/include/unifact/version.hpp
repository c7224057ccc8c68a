#ifndef UNIFACT_VERSION_HPP
#define UNIFACT_VERSION_HPP

#define UNIFACT_VERSION_STRING "0.1.0"

#endif
