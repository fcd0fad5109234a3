"""JSON schemas for reports and corpus manifests."""
