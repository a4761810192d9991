// Shapes of the service's JSON API, verbatim.
export {};
