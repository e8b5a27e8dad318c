using System;

namespace Shop.Client.Views
{
    /// <summary>返品受付ダイアログ。返金金額を計算して表示する。</summary>
    public class RmaDialog
    {
        private readonly IOrderApi _api;

        public RmaDialog(IOrderApi api)
        {
            _api = api;
        }

        // 返金金額 = 商品代金 + 配送料
        public decimal RefundFor(long orderId)
        {
            var order = _api.Get(orderId);
            return order.ItemsTotal + order.Fee;
        }

        public string Describe(long orderId)
        {
            var amount = RefundFor(orderId);
            return $"返金予定額: {amount:N0} 円 (注文 #{orderId})";
        }
    }
}
