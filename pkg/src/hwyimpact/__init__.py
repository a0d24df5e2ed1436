"""hwyimpact: disaster impacts on highway corridors from geotagged social media."""
