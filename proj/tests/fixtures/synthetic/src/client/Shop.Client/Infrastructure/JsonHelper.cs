using System.Net.Http;
using System.Text;
using System.Text.Json;

namespace Shop.Client.Infrastructure
{
    /// <summary>Thin wrapper over System.Text.Json with the client's options.</summary>
    public static class Json
    {
        private static readonly JsonSerializerOptions Options = new() { PropertyNameCaseInsensitive = true };

        public static T Parse<T>(string text) => JsonSerializer.Deserialize<T>(text, Options)!;

        public static string Serialize<T>(T value) => JsonSerializer.Serialize(value, Options);

        public static HttpContent Content<T>(T value) =>
            new StringContent(Serialize(value), Encoding.UTF8, "application/json");
    }
}
