// Copyright 2026 The satrelay Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Placement of the relay, receivers, interferer and satellite. All lengths
// are kilometres and all angles radians.

#ifndef SATRELAY_GEOMETRY_H_
#define SATRELAY_GEOMETRY_H_

#include <cmath>

#include "satrelay/rng.h"

namespace satrelay {

struct GeometryParams {
  double relay_altitude = 5.0;        // above ground
  double coverage_radius = 20.0;      // receiver disk
  double interferer_radius = 30.0;    // interferer disk, larger than coverage
  double earth_radius = 6371.0;
  double outer_radius = 8371.0;       // satellite shell, from Earth centre
  double inner_radius = 6531.0;
  double apex_angle = M_PI / 3.0;     // full cone angle about the zenith
  double receiver_density = 0.01;     // nodes per km^2
  double max_relay_altitude = 50.0;

  // Relay distance from the Earth centre.
  double RelayRadius() const { return relay_altitude + earth_radius; }

  // Throws DomainError naming the first violated constraint. The interferer
  // disk is only checked when `with_interferer` is set.
  void Validate(bool with_interferer = false) const;
};

// Support and normalisation of the squared satellite distance.
struct D0SquaredSupport {
  double d0_min_sq;
  double d0_max_sq;
  double tau;
};

double ExpectedNodeCount(const GeometryParams& params);
double PoissonPmf(int k, double mean);

// Density of the relay-to-receiver distance.
double ReceiverDistancePdf(double x, const GeometryParams& params);

double InterfererDistance(double receiver_radius, double interferer_radius,
                          double angle);

// Satellite-to-relay distance for a satellite at `radius` from the Earth
// centre and `polar_angle` off the relay zenith.
double SatelliteDistance(double radius, double polar_angle,
                         const GeometryParams& params);

double ConeShellVolume(const GeometryParams& params);

D0SquaredSupport SatelliteSupport(const GeometryParams& params);
double D0SquaredPdf(double x, const GeometryParams& params);
double D0SquaredCdf(double x, const GeometryParams& params);

struct ReceiverSample {
  double radius;    // horizontal offset from the relay foot point
  double distance;  // slant range to the relay
};

struct InterfererSample {
  double radius;
  double angle;  // relative to the receiver azimuth, in [0, 2*pi)
};

struct SatelliteSample {
  double radius;
  double polar_angle;
  double distance;
};

// Inverse-CDF transforms of uniforms on [0, 1].
ReceiverSample ReceiverFromUniform(double u, const GeometryParams& params);
InterfererSample InterfererFromUniform(double u_radius, double u_angle,
                                       const GeometryParams& params);
SatelliteSample SatelliteFromUniform(double u_radius, double u_angle,
                                     const GeometryParams& params);

ReceiverSample SampleReceiver(CounterRng& rng, const GeometryParams& params);
InterfererSample SampleInterferer(CounterRng& rng,
                                  const GeometryParams& params);
SatelliteSample SampleSatellite(CounterRng& rng, const GeometryParams& params);

}  // namespace satrelay

#endif  // SATRELAY_GEOMETRY_H_
